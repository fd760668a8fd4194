import example


def test_example_script_runs(capsys):
    example.main()
    out = capsys.readouterr().out
    assert "判定结果: UNSAT" in out
    assert out.count("判定结果: SAT") == 3
    assert "R1 与 R2 互模拟: True" in out
    assert "区分句子: forall x0. (forall x1. ((a, x0) ((b, x1) r)))" in out
