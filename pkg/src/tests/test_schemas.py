import json

import numpy as np
import pytest
from pydantic import ValidationError

from src.models.permutation import Permutation
from src.models.wreath import WreathElement
from src.schemas.bilinear import BilinearMapFile
from src.schemas.coloring import InstanceFile
from src.schemas.graph import GraphFile
from src.schemas.group import GroupFile, HRMatrixFile
from src.schemas.permutation import PermGroupFile, PermutationFile, SubcosetFile
from src.schemas.report import PipelineReport, RunReport
from src.schemas.wreath import TowerFile, WreathElementFile
from src.services.gri_reduction import reduce_group_isomorphism
from src.services.perm_core import symmetric_perm_group
from src.services.wreath_holomorph import tower_from_groups
from src.utils.errors import MalformedInput, NotAGroup


def test_group_file(z4):
    data = GroupFile.from_domain(z4).model_dump()
    assert data["order"] == 4
    G = GroupFile.model_validate(data).to_domain()
    assert np.array_equal(G.table, z4.table)


def test_group_file_rejects_bad_input():
    with pytest.raises(ValidationError):
        GroupFile.model_validate({"order": 3, "table": [[0, 1], [1, 0]]})
    with pytest.raises(ValidationError):
        GroupFile.model_validate({"table": [[0]], "extra": 1})
    with pytest.raises(NotAGroup):
        GroupFile.model_validate({"table": [[0, 1], [1, 1]]}).to_domain()


def test_permutation_files():
    with pytest.raises(ValidationError):
        PermutationFile.model_validate({"n": 3, "images": [0, 1]})
    with pytest.raises(MalformedInput):
        PermutationFile.model_validate({"n": 2, "images": [0, 0]}).to_domain()
    group = PermGroupFile.model_validate({"n": 3, "generators": [[1, 0, 2], [1, 2, 0]]}).to_domain()
    assert group.order == 6


def test_subcoset_file():
    coset = SubcosetFile.model_validate({"rep": [1, 0, 2], "group": {"n": 3, "generators": [[0, 2, 1]]}}).to_domain()
    assert coset.order == 2
    assert Permutation([1, 2, 0]) in coset
    empty = SubcosetFile.model_validate({"rep": None, "group": {"n": 3}}).to_domain()
    assert empty.is_empty
    with pytest.raises(MalformedInput):
        SubcosetFile.model_validate({"rep": [1, 0], "group": {"n": 3}}).to_domain()


def test_instance_file_modes(z4):
    coset = {"rep": [0, 1, 2, 3], "group": {"n": 4, "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]}}
    points = InstanceFile.model_validate({"mode": "points", "coset": coset, "f1": [0, 1, 1, 2], "f2": [1, 0, 1, 2]})
    assert points.to_domain().f1.kind == "points"
    triples = InstanceFile.model_validate({"mode": "triples", "coset": coset, "f1": z4.rows, "f2": z4.rows})
    assert triples.to_domain().f2.kind == "triples"
    with pytest.raises(MalformedInput):
        InstanceFile.model_validate({"mode": "pairs", "coset": coset, "f1": [0, 1, 1, 2], "f2": [0, 1, 1, 2]}).to_domain()


def test_bilinear_file():
    data = {
        "A": {"factors": [[2, 1]]},
        "B": {"factors": [[2, 1]]},
        "table": [[[0], [0]], [[0], [1]]],
    }
    f = BilinearMapFile.model_validate(data).to_domain()
    assert f.table.tolist() == [[0, 0], [0, 1]]
    assert BilinearMapFile.from_domain(f).table == data["table"]
    data["table"] = [[[0], [0]], [[0]]]
    with pytest.raises((MalformedInput, ValueError)):
        BilinearMapFile.model_validate(data).to_domain()


def test_hr_matrix_file():
    M = HRMatrixFile.model_validate({"p": 2, "exponents": [1, 2], "entries": [[1, 1], [2, 1]]}).to_domain()
    assert M.apply((1, 0)) == (1, 2)


def test_graph_file():
    X = GraphFile.model_validate({"n": 3, "edges": [[0, 1], [1, 2]]}).to_domain()
    assert X.degrees.tolist() == [1, 2, 1]
    assert GraphFile.from_domain(X).edges == [(0, 1), (1, 2)]


def test_tower_and_element_files():
    tower = tower_from_groups([symmetric_perm_group(2), symmetric_perm_group(2)])
    tower_file = TowerFile.model_validate_json(TowerFile.from_domain(tower).model_dump_json())
    assert tower_file.to_domain().sizes == (2, 2)

    element = WreathElement.with_components(tower, {(1, ()): Permutation([1, 0]), (0, (1,)): Permutation([1, 0])})
    dumped = WreathElementFile.from_domain(element).model_dump()
    assert len(dumped["components"]) == 3
    assert dumped["components"][0] == {"level": 0, "suffix": [0], "elem": [0, 1]}
    assert dumped["components"][1] == {"level": 0, "suffix": [1], "elem": [1, 0]}
    assert WreathElementFile.model_validate(dumped).to_domain(tower).components == element.components

    bad = {"components": [{"level": 0, "suffix": [], "elem": [1, 0]}]}
    with pytest.raises(MalformedInput):
        WreathElementFile.model_validate(bad).to_domain(tower)
    missing = {"components": dumped["components"][1:]}
    with pytest.raises(MalformedInput):
        WreathElementFile.model_validate(missing).to_domain(tower)


def test_pipeline_report(z4, klein):
    report = PipelineReport.from_domain(reduce_group_isomorphism(z4, z4))
    assert report.iso_order == 2
    assert report.reason is None
    empty = PipelineReport.from_domain(reduce_group_isomorphism(z4, klein))
    assert empty.iso_order == 0 and empty.reason == "series-shape"


def test_run_report_drops_missing_wall_time():
    report = RunReport(command="canon", seed=0, outputs={"label": "Z4"})
    data = json.loads(report.to_json())
    assert "wall_time" not in data
    assert data["outputs"] == {"label": "Z4"}
