from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("qratchet")
except PackageNotFoundError:
    __version__ = "unknown"
