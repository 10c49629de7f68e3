import logging
from pathlib import Path
from typing import Any, Dict

from src.crud.corpus import export_corpus
from src.crud.fixtures import load_group, load_json
from src.schemas.group import DecompositionFile, HRMatrixFile
from src.schemas.permutation import PermGroupFile
from src.schemas.wreath import TowerFile, WreathElementFile
from src.services.abelian_aut import (
    aut_order_formula,
    canonical_decomposition,
    check_aut_factors,
)
from src.services.corpus import abelian_corpus, group_corpus
from src.services.gri_reduction import radical_derived_series
from src.services.wreath_holomorph import (
    automorphism_group,
    holomorph,
    wreath_evaluate,
    wreath_to_permutation,
)
from src.utils.errors import MalformedInput

logger = logging.getLogger(__name__)


def series(args) -> Dict[str, Any]:
    G = load_group(args.group)
    S = radical_derived_series(G)
    labels = []
    for i, F in enumerate(S.factors):
        if S.semisimple_top and i == S.length - 1:
            labels.append(f"top({F.order})")
        else:
            labels.append(canonical_decomposition(F).decomposition.label)
    return {
        "order": G.order,
        "chain_orders": S.series.orders,
        "factor_orders": S.factor_orders,
        "factors": labels,
        "semisimple_top": S.semisimple_top,
    }


def canon(args) -> Dict[str, Any]:
    form = canonical_decomposition(load_group(args.group))
    return {
        "decomposition": DecompositionFile.from_domain(form.decomposition).model_dump(),
        "label": form.decomposition.label,
        "to_canonical": form.to_canonical.tolist(),
    }


def aut_abelian(args) -> Dict[str, Any]:
    A = load_group(args.group)
    form = canonical_decomposition(A)
    decomp = form.decomposition
    outputs: Dict[str, Any] = {
        "decomposition": decomp.label,
        "aut_order": aut_order_formula(decomp),
        "blocks": {str(p): [d for _, d in decomp.blocks(p)] for p in decomp.primes},
        "factors": [label.display() for label in check_aut_factors(A)],
    }
    if args.generators:
        outputs["generators"] = PermGroupFile.from_domain(automorphism_group(A)).generators
    if args.matrix is not None:
        M = load_json(args.matrix, HRMatrixFile).to_domain()
        if args.point is None or len(args.point) != M.size:
            raise MalformedInput(f"--point needs {M.size} coordinates for this matrix")
        outputs["image"] = list(M.apply(args.point))
    return outputs


def holomorph_cmd(args) -> Dict[str, Any]:
    G = load_group(args.group)
    hol = holomorph(G)
    return {
        "order": hol.order,
        "base_order": G.order,
        "aut_order": hol.automorphisms.order,
        "generators": [list(g.images) for g in hol.generators()],
    }


def wreath_eval(args) -> Dict[str, Any]:
    tower = load_json(args.tower, TowerFile).to_domain()
    element = load_json(args.element, WreathElementFile).to_domain(tower)
    outputs: Dict[str, Any] = {"sizes": list(tower.sizes)}
    if args.point is not None:
        outputs["image"] = list(wreath_evaluate(element, args.point))
    if args.permutation:
        outputs["permutation"] = list(wreath_to_permutation(element).images)
    return outputs


def corpus_list(args) -> Dict[str, Any]:
    entries = abelian_corpus(args.max_abelian_order) if args.abelian else group_corpus(not args.small_only)
    return {
        "groups": [
            {"name": e.name, "order": e.order, "tags": sorted(e.tags)} for e in entries
        ]
    }


def corpus_export(args) -> Dict[str, Any]:
    entries = abelian_corpus(args.max_abelian_order) if args.abelian else group_corpus(not args.small_only)
    paths = export_corpus(entries, args.directory)
    return {"directory": str(args.directory), "files": [p.name for p in paths]}


def register(subparsers, parents=()) -> None:
    p = subparsers.add_parser("series", parents=parents, help="radical derived series of a group")
    p.add_argument("group", type=Path)
    p.set_defaults(handler=series, input_files=("group",))

    p = subparsers.add_parser("canon", parents=parents, help="canonical cyclic decomposition of an abelian group")
    p.add_argument("group", type=Path)
    p.set_defaults(handler=canon, input_files=("group",))

    p = subparsers.add_parser("aut-abelian", parents=parents, help="automorphism group of an abelian group")
    p.add_argument("group", type=Path)
    p.add_argument("--generators", action="store_true", help="list Aut(A) generators on element indices")
    p.add_argument("--matrix", type=Path, help="HR matrix to apply to --point")
    p.add_argument("--point", type=int, nargs="+")
    p.set_defaults(handler=aut_abelian, input_files=("group", "matrix"))

    p = subparsers.add_parser("holomorph", parents=parents, help="holomorph of a group acting on its elements")
    p.add_argument("group", type=Path)
    p.set_defaults(handler=holomorph_cmd, input_files=("group",))

    p = subparsers.add_parser("wreath-eval", parents=parents, help="evaluate a wreath element on the tower domain")
    p.add_argument("tower", type=Path)
    p.add_argument("element", type=Path)
    p.add_argument("--point", type=int, nargs="+", help="coordinates, bottom level first")
    p.add_argument("--permutation", action="store_true", help="also print the induced domain permutation")
    p.set_defaults(handler=wreath_eval, input_files=("tower", "element"))

    corpus = subparsers.add_parser("corpus", parents=parents, help="built-in group corpus")
    actions = corpus.add_subparsers(dest="action", required=True)
    for name, handler in (("list", corpus_list), ("export", corpus_export)):
        p = actions.add_parser(name, parents=parents)
        if name == "export":
            p.add_argument("directory", type=Path)
        p.add_argument("--abelian", action="store_true", help="abelian groups instead of the small-group corpus")
        p.add_argument("--max-abelian-order", type=int, default=128)
        p.add_argument("--small-only", action="store_true", help="leave out S4, SL(2,3) and Z2xA5")
        p.set_defaults(handler=handler, input_files=())
