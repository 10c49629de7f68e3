import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path

from src.crud.fixtures import save_json
from src.main import EXIT_MALFORMED, EXIT_OK, main
from src.schemas.group import GroupFile
from src.services.corpus import dihedral
from src.services.group_core import cyclic_group
from src.utils.config import Config


class TestMain(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.z4 = save_json(self.dir / "z4.json", GroupFile.from_domain(cyclic_group(4)))
        self.s3 = save_json(self.dir / "s3.json", GroupFile.from_domain(dihedral(6)))

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, data):
        path = self.dir / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    def run_cli(self, *argv):
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = main([str(a) for a in argv])
        return code, json.loads(buffer.getvalue())

    def test_series(self):
        code, report = self.run_cli("series", self.s3)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["command"], "series")
        self.assertEqual(report["outputs"]["factor_orders"], [3, 2])
        self.assertIn("group", report["inputs"])
        self.assertNotIn("wall_time", report)

    def test_reduce(self):
        code, report = self.run_cli("reduce", self.z4, self.z4, "--seed", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["seed"], 5)
        self.assertEqual(report["outputs"]["iso_order"], 2)

    def test_reduce_non_isomorphic(self):
        z5 = save_json(self.dir / "z5.json", GroupFile.from_domain(cyclic_group(5)))
        code, report = self.run_cli("reduce", self.z4, z5)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["outputs"]["iso_order"], 0)
        self.assertEqual(report["outputs"]["reason"], "order")

    def test_gris_default_coset(self):
        code, report = self.run_cli("gris", self.s3, self.s3)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["outputs"]["order"], 6)

    def test_canon_and_aut(self):
        code, report = self.run_cli("canon", self.z4)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["outputs"]["label"], "Z4")
        matrix = self.write("m.json", {"p": 2, "exponents": [1, 2], "entries": [[1, 1], [2, 1]]})
        d8 = save_json(self.dir / "d8.json", GroupFile.from_domain(dihedral(8)))
        code, report = self.run_cli("aut-abelian", d8)
        self.assertEqual(code, EXIT_MALFORMED)
        self.assertEqual(report["outputs"]["error"], "NotAbelian")
        code, report = self.run_cli("aut-abelian", self.z4, "--matrix", matrix, "--point", "1", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["outputs"]["aut_order"], 2)
        self.assertEqual(report["outputs"]["image"], [1, 2])

    def test_color_iso_checked(self):
        instance = self.write("instance.json", {
            "mode": "points",
            "coset": {"rep": [0, 1, 2], "group": {"n": 3, "generators": [[1, 0, 2], [1, 2, 0]]}},
            "f1": [0, 1, 2],
            "f2": [1, 0, 2],
        })
        code, report = self.run_cli("color-iso", instance, "--check")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["outputs"]["order"], 1)
        self.assertEqual(report["outputs"]["representative"], [1, 0, 2])
        self.assertTrue(report["outputs"]["checked"])

    def test_isometry_compare(self):
        bilinear = self.write("f.json", {
            "A": {"factors": [[5, 1]]},
            "B": {"factors": [[5, 1]]},
            "table": [[[(x * y) % 5] for y in range(5)] for x in range(5)],
        })
        code, report = self.run_cli("isometry", bilinear, "--method", "gfgris", "--compare")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["outputs"]["order"], 2)
        self.assertEqual(report["outputs"]["compared_with"], "brute")

    def test_malformed_inputs(self):
        bad = self.write("bad.json", {"table": [[0, 1], [1, 1]]})
        code, report = self.run_cli("series", bad)
        self.assertEqual(code, EXIT_MALFORMED)
        self.assertEqual(report["outputs"]["error"], "NotAGroup")
        broken = self.dir / "broken.json"
        broken.write_text("{not json", encoding="utf-8")
        code, _ = self.run_cli("series", broken)
        self.assertEqual(code, EXIT_MALFORMED)
        code, _ = self.run_cli("series", self.dir / "missing.json")
        self.assertEqual(code, EXIT_MALFORMED)

    def test_max_order(self):
        before = Config.LIMITS["max_order"]
        code, report = self.run_cli("series", self.s3, "--max-order", "4")
        self.assertEqual(code, EXIT_MALFORMED)
        self.assertEqual(report["outputs"]["error"], "OrderOutOfRange")
        self.assertEqual(Config.LIMITS["max_order"], before)

    def test_verify_options(self):
        code, report = self.run_cli("verify", "--suite", "solver-oracle", "--option", "instances=3")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report["outputs"]["passed"])
        code, _ = self.run_cli("verify", "--suite", "solver-oracle", "--option", "bogus=1")
        self.assertEqual(code, EXIT_MALFORMED)

    def test_out_and_record_time(self):
        out = self.dir / "reports" / "series.json"
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = main(["series", str(self.z4), "--out", str(out), "--record-time"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(buffer.getvalue(), "")
        report = json.loads(out.read_text(encoding="utf-8"))
        self.assertIn("wall_time", report)

    def test_bad_seed(self):
        code, _ = self.run_cli("series", self.z4, "--seed", "-1")
        self.assertEqual(code, EXIT_MALFORMED)


if __name__ == '__main__':
    unittest.main()
