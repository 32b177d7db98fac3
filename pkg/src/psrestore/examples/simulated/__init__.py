__all__ = (
    "restore01",
    "pca01",
)
