from dotboxes.board import Edge, apply_move, edge_universe, new_board
from dotboxes.render import RenderSpec, render


def test_fresh_1x1_ascii():
    out = render(new_board(1, 1))
    assert out == "+ +\n\n+ +\n"


def test_owned_box_marked():
    s = new_board(1, 1)
    for e in edge_universe(1, 1):
        s, _ = apply_move(s, e)
    out = render(s)
    assert out == "+-+\n|B|\n+-+\n"


def test_scenery_box_dot():
    s = new_board(1, 1, edge_universe(1, 1))
    assert render(s) == "+-+\n|.|\n+-+\n"


def test_ascii_charset():
    s = new_board(3, 2, edge_universe(3, 2)[:5])
    out = render(s)
    assert set(out) <= set("+-|.AB \n")


def test_deterministic():
    s = new_board(2, 3, edge_universe(2, 3)[:7], score_a=2)
    assert render(s) == render(s)
    spec = RenderSpec(format="svg")
    assert render(s, spec) == render(s, spec)


def test_svg_well_formed():
    import xml.etree.ElementTree as ET

    s = new_board(2, 2, edge_universe(2, 2)[:5])
    out = render(s, RenderSpec(format="svg"))
    root = ET.fromstring(out)
    assert root.tag.endswith("svg")
    assert "viewBox" in root.attrib


def test_svg_overlay_groups():
    import xml.etree.ElementTree as ET

    s = new_board(4, 4)
    spec = RenderSpec(
        format="svg",
        overlay={"g1": [(0, 0), (1, 0)], "g2": [(2, 2), (3, 3)]},
    )
    out = render(s, spec)
    root = ET.fromstring(out)
    ns = "{http://www.w3.org/2000/svg}"
    regions = [
        el
        for el in root.iter(f"{ns}g")
        if el.attrib.get("id", "").startswith("region-")
    ]
    assert len(regions) == 2
