"""sbinet: semantic dashboard generation for annotated network datasets.

Two annotated files (a node set and an edge set) go in; an interactive
dashboard bundle comes out.  The annotations drive everything: domain
detection, discovery of the applicable network metrics, and the generated
interactive objects.
"""

__version__ = "0.1.0"

from .annotated import AnnotatedDataset, load_annotated_file, load_annotated_text
from .errors import PipelineError
from .kg import DomainClass, KnowledgeGraph
from .network import Network, build_network, undirected_view
from .pipeline import RunOptions, run_build

__all__ = [
    "__version__",
    "AnnotatedDataset",
    "DomainClass",
    "KnowledgeGraph",
    "Network",
    "PipelineError",
    "RunOptions",
    "build_network",
    "load_annotated_file",
    "load_annotated_text",
    "run_build",
    "undirected_view",
]
