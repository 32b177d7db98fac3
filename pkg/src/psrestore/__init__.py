"""psrestore restores pansharpened multispectral images by nonlocal filtering of chromatic PCA components guided by the panchromatic image"""

__version__ = "0.3.1"
