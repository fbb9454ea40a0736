"""Quick check that the extension module loads and agrees with known values."""

import pyhopdom as hd


def main():
    c8 = hd.family("cycle 8")
    assert c8.n == 8 and len(c8.edges()) == 8
    r = hd.solve(c8, "hop")
    assert r["value"] == 4 and r["optimal"], r

    g = hd.Graph.from_graph6(c8.to_graph6())
    assert g == c8 and g.is_isomorphic(hd.Graph(8, [(i, (i + 3) % 8) for i in range(8)]))

    table = [row["gamma_h_cycle"] for row in hd.cycle_table()]
    assert table == [2, 2, 2, 3, 4, 3, 4, 4, 4, 5, 6], table
    assert all(hd.gamma_h_cycle(n) == hd.solve(hd.Graph(n, [(i, (i + 1) % n) for i in range(n)]))["value"] for n in range(3, 16))
    assert [hd.gamma_h_path(n) for n in range(1, 9)] == [hd.solve(hd.family(f"path {n}"))["value"] for n in range(1, 9)]

    chain = hd.family("tightness-chain 3")
    assert hd.solve(chain)["value"] == 6

    star = hd.two_step_graph(hd.family("cycle 5"))
    assert star.is_isomorphic(hd.family("cycle 5"))

    assert len(hd.enumerate_graphs(6, connected=True)) == 112
    names = sorted(g.canonical_form() for g in hd.derive_exceptional(8, "hop", triangle_free=True))
    assert len(names) == 3, names

    cert = hd.certify_two_fifths(hd.family("amalgam 5 6 7"))
    assert cert["size"] <= cert["bound"] == 6, cert

    v = hd.check_graph(chain, "T1,T2")
    assert v["checks"]["T1"]["status"] == "pass", v

    report = hd.verify_enumeration("n=4..7,connected,triangle-free,min-degree=2", "T2")
    assert report["totals"]["T2"]["fail"] == 0 and report["count"] > 0

    try:
        hd.Graph.from_graph6("!!")
    except ValueError:
        pass
    else:
        raise AssertionError("bad graph6 accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
