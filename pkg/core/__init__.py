from core.errors import (
    QTuranError,
    ValidationError,
    FormatError,
    PatternError,
    InstanceTooLarge,
    CapExceeded,
    ConstructionError,
)
from core.pattern import PatternGraph, named_pattern
from core.qgraph import QEdge, QGraph, SlicePair
