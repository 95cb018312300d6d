"""
GCWSNet - pGMM kernel hashing toolkit

Generalized consistent weighted sampling, b-bit one-hot encoding, count-sketch
compression, normalized random Fourier features and a small numpy trainer.
"""

from gcwsnet.__version__ import __version__

__all__ = [
    "__version__",
]
