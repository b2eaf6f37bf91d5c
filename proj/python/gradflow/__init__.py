"""Separatrix diagrams of gradient flows on the disk, annulus and pants."""

try:
    from . import _gradflow as _ext
except ImportError:  # build tree: the extension sits next to the package
    import _gradflow as _ext

Diagram = _ext.Diagram
DiagramError = _ext.DiagramError
ParseError = _ext.ParseError
MapError = _ext.MapError
CapExceeded = _ext.CapExceeded

read_sdg = _ext.read_sdg
enumerate = _ext.enumerate
sn_census = _ext.sn_census
connection_census = _ext.connection_census
reconcile = _ext.reconcile
families = _ext.families
zeros = _ext.zeros
verify_family = _ext.verify_family

__all__ = [
    "Diagram",
    "DiagramError",
    "ParseError",
    "MapError",
    "CapExceeded",
    "read_sdg",
    "enumerate",
    "sn_census",
    "connection_census",
    "reconcile",
    "families",
    "zeros",
    "verify_family",
]
