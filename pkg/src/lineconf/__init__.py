"""Line configurations over F2: quadrics, V-configurations, classification."""

__version__ = "0.1.0"
