import logging
from pathlib import Path
from typing import Any, Dict

from src.crud.fixtures import load_group, load_json
from src.models.permutation import Permutation, Subcoset
from src.schemas.coloring import InstanceFile
from src.schemas.permutation import SubcosetFile
from src.schemas.report import PipelineReport, SubcosetReport
from src.services.color_iso import exhaustive_color_iso, gris_solve, solve_color_iso
from src.services.gri_reduction import reduce_group_isomorphism
from src.services.perm_core import symmetric_perm_group
from src.utils.config import Config
from src.utils.errors import InvariantViolation, MalformedInput

logger = logging.getLogger(__name__)


def reduce(args) -> Dict[str, Any]:
    G, H = load_group(args.g1), load_group(args.g2)
    result = reduce_group_isomorphism(G, H, max_workers=Config.RUN["parallel"])
    return PipelineReport.from_domain(result).model_dump(exclude_none=True)


def color_iso(args) -> Dict[str, Any]:
    instance = load_json(args.instance, InstanceFile).to_domain()
    result = solve_color_iso(instance)
    outputs = SubcosetReport.from_domain(result).model_dump(exclude_none=True)
    if args.check:
        brute = exhaustive_color_iso(instance)
        if len(brute) != result.order or any(g not in result for g in brute):
            raise InvariantViolation(
                f"solver found {result.order} color isomorphisms, exhaustive search {len(brute)}",
                witness={"solver": result.order, "exhaustive": len(brute)},
            )
        outputs["checked"] = True
    return outputs


def gris(args) -> Dict[str, Any]:
    G, H = load_group(args.g1), load_group(args.g2)
    if G.order != H.order:
        raise MalformedInput(f"GRIS takes groups of equal order, got {G.order} and {H.order}")
    if args.coset is not None:
        coset = load_json(args.coset, SubcosetFile).to_domain()
    else:
        coset = Subcoset(Permutation.identity(G.order), symmetric_perm_group(G.order))
    result = gris_solve(G, H, coset)
    return SubcosetReport.from_domain(result).model_dump(exclude_none=True)


def register(subparsers, parents=()) -> None:
    p = subparsers.add_parser("reduce", parents=parents, help="Iso(G, H) through the color isomorphism reduction")
    p.add_argument("g1", type=Path)
    p.add_argument("g2", type=Path)
    p.set_defaults(handler=reduce, input_files=("g1", "g2"))

    p = subparsers.add_parser("color-iso", parents=parents, help="solve a color isomorphism instance")
    p.add_argument("instance", type=Path)
    p.add_argument("--check", action="store_true", help="compare against exhaustive coset filtering")
    p.set_defaults(handler=color_iso, input_files=("instance",))

    p = subparsers.add_parser("gris", parents=parents, help="group isomorphism restricted to a subcoset")
    p.add_argument("g1", type=Path)
    p.add_argument("g2", type=Path)
    p.add_argument("--coset", type=Path, help="subcoset file; the full symmetric group when omitted")
    p.set_defaults(handler=gris, input_files=("g1", "g2", "coset"))
