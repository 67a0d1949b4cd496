"""keysweep: security audit toolkit for SSH client keys and signatures."""

__version__ = "0.1.0"
