import pytest

import tagpcp


def test_tag_run_two_tag():
    # 2-tag system a -> bc, b -> a, c -> aaa on "aaa"
    word, steps, halted = tagpcp.tag_run(2, [("a", "bc"), ("b", "a"), ("c", "aaa")], "aaa", 2)
    assert (word, steps, halted) == ("cbc", 2, False)


def test_cyclic_trace():
    trace = tagpcp.cyclic_trace(["10", "11"], "1", 3)
    assert trace[0] == (0, "1")
    assert trace[1] == (1, "10")


def test_compile_and_simulate():
    sys = tagpcp.compile(["10", "11"], x=20)
    p = sys.params
    assert p["beta"] == p["z1"] * (3 * p["x"] - 2)
    assert p["u_length"] == (3 * p["x"] + 1) * p["beta"] - 3 * p["x"]
    audit = sys.audit()
    assert audit["conflicts"] == 0
    assert audit["shift_collisions"] == 0
    steps, _ = tagpcp.simulate(sys, "1", 3, "object")
    expected = [w for _, w in tagpcp.cyclic_trace(["10", "11"], "1", 3)[1:]]
    assert [s["payload"] for s in steps] == expected


def test_serialize_round_trip():
    sys = tagpcp.compile(["", ""], x=16)
    again = tagpcp.load_compiled(sys.serialize())
    assert again.params == sys.params


def test_reduce_and_replay():
    pairs = tagpcp.reduce_to_pcp(2, "bbbcbb")
    assert len(pairs) == 4
    rep = tagpcp.match_replay(2, "bbbcbb", 100)
    assert rep["outcome"] == "match"
    assert tagpcp.verify_solution(pairs, rep["indices"])


def test_bfs():
    pairs = [("1", "111"), ("10111", "10"), ("10", "0")]
    sol = tagpcp.bfs_solve(pairs, 6)
    assert sol is not None and tagpcp.verify_solution(pairs, sol)
    assert tagpcp.bfs_solve([("0", "1")], 5) is None


def test_errors():
    with pytest.raises(tagpcp.Error):
        tagpcp.compile(["10", "12"])
    with pytest.raises(ValueError):
        tagpcp.verify_solution([("1", "1")], [])
