import logging
from pathlib import Path
from typing import Any, Dict

from src.crud.fixtures import load_json
from src.schemas.bilinear import BilinearMapFile
from src.schemas.permutation import PermGroupFile
from src.services.abelian_aut import aut_order_formula
from src.services.bilinear_isometry import brute_force_isometries, isometries_via_gris, similitudes_via_gris
from src.utils.errors import InvariantViolation

logger = logging.getLogger(__name__)

METHODS = {
    "brute": brute_force_isometries,
    "gfgris": isometries_via_gris,
}


def isometry(args) -> Dict[str, Any]:
    f = load_json(args.bilinear, BilinearMapFile).to_domain()
    group = METHODS[args.method](f)
    outputs: Dict[str, Any] = {
        "method": args.method,
        "order": group.order,
        "aut_b_order": aut_order_formula(f.B),
        "generators": PermGroupFile.from_domain(group).generators,
    }
    if args.compare:
        other = "gfgris" if args.method == "brute" else "brute"
        reference = METHODS[other](f)
        mismatch = [list(g.images) for g in reference.generators if g not in group]
        if reference.order != group.order or mismatch:
            raise InvariantViolation(
                f"{args.method} found {group.order} isometries, {other} found {reference.order}",
                witness={"order": [group.order, reference.order], "missing": mismatch[:1]},
            )
        outputs["compared_with"] = other
    if args.similitudes:
        outputs["similitude_order"] = similitudes_via_gris(f).order
    logger.info(f"|Isom(f)| = {group.order} by {args.method}")
    return outputs


def register(subparsers, parents=()) -> None:
    p = subparsers.add_parser("isometry", parents=parents, help="isometry group of a bilinear map")
    p.add_argument("bilinear", type=Path)
    p.add_argument("--method", choices=sorted(METHODS), default="brute")
    p.add_argument("--compare", action="store_true", help="cross-check against the other method")
    p.add_argument("--similitudes", action="store_true", help="also report isometries up to Aut(A)")
    p.set_defaults(handler=isometry, input_files=("bilinear",))
