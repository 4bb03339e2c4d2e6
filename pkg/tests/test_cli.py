import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homtoric import documents as docs
from homtoric.cli import run
from homtoric.cox import GroupSizes, SubgroupSpec, quotient_fan
from homtoric.documents import DocumentError
from homtoric.fan import fan_equal, make_fan
from homtoric.homogeneity import classify, quotient_certificate
from homtoric.properties import property_report

P2_DOC = {"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "maximal_cones": [[0, 1], [1, 2], [0, 2]]}
P1_A1_DOC = {"rank": 2, "rays": [[1, 0], [-1, 0], [0, 1]], "maximal_cones": [[0, 2], [1, 2]]}


@pytest.fixture
def cli(capsys, tmp_path):
    def call(*args, files=None):
        paths = {}
        for name, content in (files or {}).items():
            p = tmp_path / name
            p.write_text(content if isinstance(content, str) else json.dumps(content))
            paths[name] = str(p)
        argv = [paths.get(a, a) for a in args]
        code = run(argv)
        out, err = capsys.readouterr()
        return code, (json.loads(out) if out.strip() else None), err
    return call


def test_build(cli):
    code, doc, _ = cli("build", "--sizes", "2,2")
    assert code == 0
    assert doc["rank"] == 4 and len(doc["maximal_cones"]) == 4


def test_quotient_embeds_certificate(cli):
    code, doc, _ = cli("quotient", "--sizes", "2", "--relations", "2")
    assert code == 0
    assert doc["rays"] == [[1, 0], [1, 2]] and doc["maximal_cones"] == [[0], [1]]
    assert doc["certificate"]["group_sizes"] == [2]
    assert doc["certificate"]["subgroup_relations"] == [[2]]
    # the embedded certificate verifies against the emitted fan
    code, out, _ = cli("classify", "fan.json", files={"fan.json": {k: doc[k] for k in ("rank", "rays", "maximal_cones")}})
    assert code == 0 and out["subgroup_relations"] == [[2]]


def test_quotient_whole_torus(cli):
    code, doc, _ = cli("quotient", "--sizes", "2,2")
    assert code == 0 and doc["rank"] == 2 and doc["certificate"]["subgroup_relations"] == []


def test_classify_projective_plane(cli):
    code, doc, _ = cli("classify", "p2.json", files={"p2.json": P2_DOC})
    assert code == 0
    assert doc["group_sizes"] == [3] and doc["subgroup_relations"] == []


def test_classify_rejection(cli):
    code, doc, _ = cli("classify", "f.json", files={"f.json": P1_A1_DOC})
    assert code == 1 and doc["reason"] == "NONFACES_DONT_PARTITION"


def test_classify_non_simplicial_is_rejection(cli):
    bad = {"rank": 2, "rays": [[1, 0], [-1, 0]], "maximal_cones": [[0, 1]]}
    code, doc, _ = cli("classify", "f.json", files={"f.json": bad})
    assert code == 1 and doc["reason"] == "NOT_SIMPLICIAL"


def test_properties_cert(cli):
    code, doc, _ = cli("properties", "--cert", "c.json", files={"c.json": {"sizes": [2, 2], "relations": [[1, 1]]}})
    assert code == 0 and doc["quasiaffine"] is True and doc["dimension"] == 3


def test_properties_fan(cli):
    code, doc, _ = cli("properties", "p2.json", files={"p2.json": P2_DOC})
    assert code == 0 and doc["projective"] is True and doc["class_group"]["description"] == "Z"


def test_properties_usage(cli):
    code, doc, _ = cli("properties")
    assert code == 2 and "error" in doc


def test_validate(cli):
    code, doc, _ = cli("validate", "p2.json", files={"p2.json": P2_DOC})
    assert code == 0 and doc["valid"] and doc["cones"] == 7 and doc["has_full_dim_cone"]
    bad = {"rank": 2, "rays": [[1, 0], [0, 1], [1, 1]], "maximal_cones": [[0, 1], [2]]}
    code, doc, _ = cli("validate", "bad.json", files={"bad.json": bad})
    assert code == 2 and doc["error"] == "BAD_INTERSECTION" and doc["witness"]


def test_malformed_json_has_line_and_column(cli):
    code, doc, err = cli("classify", "f.json", files={"f.json": '{\n  "rank": 2,\n  "rays": [[1,0],\n}'})
    assert code == 2 and doc["line"] == 4
    assert "line 4" in err


@pytest.mark.parametrize("content, field", [
    ({"rays": [[1, 0]], "maximal_cones": []}, "rank"),
    ({"rank": 2, "rays": [[1, 0, 0]], "maximal_cones": []}, "rays[0]"),
    ({"rank": 2, "rays": [[1, "x"]], "maximal_cones": []}, "rays[0][1]"),
    ({"rank": 2, "rays": [[1, 0]], "maximal_cones": [0]}, "maximal_cones[0]"),
])
def test_field_diagnostics(cli, content, field):
    code, doc, _ = cli("validate", "f.json", files={"f.json": content})
    assert code == 2 and doc["field"] == field


def test_bad_flags(cli):
    assert cli("build", "--sizes", "2,1")[0] == 2
    assert cli("quotient", "--sizes", "2,2", "--relations", "1,2,3")[0] == 2
    assert cli("quotient", "--sizes", "2,2", "--relations", "a,b")[1]["field"] == "--relations"
    assert cli("classify", "missing.json")[0] == 2
    assert cli("nonsense")[0] == 2


def test_roundtrip_is_deterministic(cli):
    a = cli("roundtrip", "--trials", "20", "--seed", "7")
    b = cli("roundtrip", "--trials", "20", "--seed", "7")
    assert a[0] == 0 and a[1] == b[1]
    assert a[1]["passed"] == 20 and "roundtrip: 20/20" in a[2]
    assert cli("roundtrip", "--trials", "5", "--seed", "1", "--max-n", "1")[0] == 2


# ---------------------------------------------------------------------------
# serialization round trips

cases = st.integers(1, 3).flatmap(lambda m: st.tuples(
    st.lists(st.integers(2, 4), min_size=m, max_size=m),
    st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), max_size=m),
))


@settings(max_examples=40, deadline=None)
@given(cases)
def test_documents_roundtrip(case):
    sizes_raw, gens = case
    sizes = GroupSizes(tuple(sizes_raw))
    S = SubgroupSpec.from_generators(sizes.m, gens)
    f = quotient_fan(sizes, S).fan
    f_doc = docs.fan_to_doc(f)
    g = docs.fan_from_doc(docs.loads(docs.dumps(f_doc)))
    assert fan_equal(f, g) and docs.fan_to_doc(g) == f_doc

    cert = classify(f)
    assert docs.certificate_from_doc(docs.loads(docs.dumps(docs.certificate_to_doc(cert)))) == cert
    base = quotient_certificate(sizes, S)
    assert docs.certificate_from_doc({"group_sizes": list(sizes.sizes),
                                      "subgroup_relations": [list(r) for r in gens]}) == base

    report = property_report(cert)
    assert docs.report_from_doc(docs.loads(docs.dumps(docs.report_to_doc(report)))) == report


def test_rejection_roundtrip():
    rej = classify(make_fan(2, [(1, 0), (1, 4)], [[0], [1]]))
    back = docs.rejection_from_doc(docs.loads(docs.dumps(docs.rejection_to_doc(rej))))
    assert back == rej and back.witness == rej.witness


def test_certificate_relation_length_checked():
    with pytest.raises(DocumentError) as exc:
        docs.certificate_fields({"group_sizes": [2, 2], "subgroup_relations": [[1]]})
    assert exc.value.field == "subgroup_relations[0]"
