"""Recognition of triangulated 1-planar, IC-planar and NIC-planar graphs."""
