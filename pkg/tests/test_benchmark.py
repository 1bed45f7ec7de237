import runpy
from pathlib import Path

BENCH = Path(__file__).parent.parent / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs(capsys):
    mod = runpy.run_path(str(BENCH))
    assert mod["main"](["--repeat", "1", "--sieve-max", "20000"]) == 0
    out = capsys.readouterr().out
    assert "wss_chunk" in out and "speedup" in out
