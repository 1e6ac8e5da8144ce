""" String diagrams for free categories, with functors into tensors, functions and circuits. """

__version__ = "0.1.0"
