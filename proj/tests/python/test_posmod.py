import pytest

import posmod


@pytest.fixture(scope="module")
def digraphs():
    return posmod.digraphs()


@pytest.fixture(scope="module")
def unary():
    return posmod.unary()


def test_bundled_workspaces():
    assert posmod.bundled_names() == ["digraphs", "unary"]


def test_class_counts(digraphs, unary):
    assert len(digraphs.model_class("models(empty,<=2)")) == 12
    assert [len(unary.model_class("models(T_inj,<=3)").stratum(n)) for n in (1, 2, 3)] == [1, 2, 3]


def test_classify_point_into_edge(digraphs):
    h = posmod.Morphism(digraphs.structure("P1"), digraphs.structure("E2"), [0])
    assert posmod.classify(h) == {"hom": True, "emb": True, "imm": False, "s_imm_absolute": False}
    v = posmod.is_immersion(h)
    assert not v["holds"]
    assert v["witness"]["formula"] == "exists y1. R(x0,y1)"


def test_pc_verdicts(digraphs):
    cls = digraphs.model_class("models(empty,<=2)")
    assert posmod.is_pc(digraphs.structure("L1"), cls)["holds"]
    refuted = posmod.is_pc(digraphs.structure("P1"), cls)
    assert not refuted["holds"]
    assert refuted["scope"] == "models(empty,<=2)"
    assert [m.size for m in posmod.pc_members(cls)] == [1]


def test_apc_fixpoint(unary):
    cls = unary.model_class("models(T_inj,<=3)")
    delta = unary.delta("qf(atoms<=2)")
    assert posmod.is_apc(unary.structure("F1"), cls, delta)["holds"]
    assert posmod.is_model_complete(unary.model_class("{F1}"))["holds"]


def test_free_amalgam_is_strong(digraphs):
    square = posmod.free_amalgam(digraphs.span("fan"))
    assert square["strong"]
    assert square["amalgam"]["universe"] == 3
    assert square["amalgam"]["relations"]["R"] == [[0, 1], [0, 2]]


def test_amalgamate_within_budget(digraphs):
    budget = digraphs.model_class("models(empty,<=2)")
    assert posmod.amalgamate(digraphs.span("fan"), budget, strong=True) is None
    assert posmod.amalgamate(digraphs.span("loop_edge"), budget) is not None


def test_errors_are_python_exceptions(digraphs):
    with pytest.raises(posmod.UnknownName):
        digraphs.structure("Q9")
    with pytest.raises(posmod.Error):
        posmod.Workspace.parse("signature G { rel R/2; }\nstructure A : G { universe 2; R = {(0,5)}; }\n")


def test_workspace_round_trip(unary):
    again = posmod.Workspace.parse(unary.render(), "copy")
    assert again.render() == unary.render()


def test_claim_rows():
    rows = posmod.run_claims("poset-")
    assert [r["kind"] for r in rows] == ["ASSERTED", "ASSERTED"]
    assert all(r["passed"] for r in rows)


def test_exported_dsl_parses_back(digraphs):
    square = posmod.free_amalgam(digraphs.span("fan"))
    ws = posmod.Workspace.bundled("digraphs")
    ws.extend(square["amalgam"]["dsl"])
    d = ws.structure(square["amalgam"]["name"])
    assert d.size == 3
