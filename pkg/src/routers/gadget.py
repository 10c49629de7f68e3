import logging
from pathlib import Path
from typing import Any, Dict

from src.crud.fixtures import load_json
from src.models.permutation import Permutation, Subcoset
from src.schemas.coloring import InstanceFile
from src.schemas.graph import GraphFile
from src.schemas.permutation import SubcosetFile
from src.services.graph_gadget import check_gadget_signature, ci_to_gis, gis_to_ci
from src.services.perm_core import symmetric_perm_group
from src.utils.errors import MalformedInput

logger = logging.getLogger(__name__)


def to_graph(args) -> Dict[str, Any]:
    instance = load_json(args.instance, InstanceFile).to_domain()
    X1, X2, coset = ci_to_gis(instance, absorb_gadget_symmetry=args.absorb)
    check_gadget_signature(X1)
    check_gadget_signature(X2)
    return {
        "X1": GraphFile.from_domain(X1.graph).model_dump(),
        "X2": GraphFile.from_domain(X2.graph).model_dump(),
        "coset": SubcosetFile.from_domain(coset).model_dump(),
        "points": X1.points,
        "hubs": {str(c): v for c, v in X1.hubs.items()},
    }


def to_color(args) -> Dict[str, Any]:
    X = load_json(args.X, GraphFile).to_domain()
    Y = load_json(args.Y, GraphFile).to_domain()
    if X.n != Y.n:
        raise MalformedInput(f"graphs on {X.n} and {Y.n} vertices")
    if args.coset is not None:
        coset = load_json(args.coset, SubcosetFile).to_domain()
    else:
        coset = Subcoset(Permutation.identity(X.n), symmetric_perm_group(X.n))
    instance = gis_to_ci(X, Y, coset)
    return InstanceFile.from_domain(instance).model_dump()


def register(subparsers, parents=()) -> None:
    gadget = subparsers.add_parser("gadget", parents=parents, help="reductions between color and graph isomorphism")
    actions = gadget.add_subparsers(dest="action", required=True)

    p = actions.add_parser("to-graph", parents=parents, help="points instance -> gadget graphs and extended coset")
    p.add_argument("instance", type=Path)
    p.add_argument("--absorb", action="store_true", help="let the coset permute clique vertices")
    p.set_defaults(handler=to_graph, input_files=("instance",))

    p = actions.add_parser("to-color", parents=parents, help="graph pair -> pairs color isomorphism instance")
    p.add_argument("X", type=Path)
    p.add_argument("Y", type=Path)
    p.add_argument("--coset", type=Path, help="subcoset file; the full symmetric group when omitted")
    p.set_defaults(handler=to_color, input_files=("X", "Y", "coset"))
