import runpy
from pathlib import Path

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_benchmark_quick_runs(capsys):
    main = runpy.run_path(str(BENCH))["main"]
    rows = main(["--quick", "--repeat", "1"])
    assert rows and all(t > 0 for _, times in rows for t in times)
    assert "backends:" in capsys.readouterr().out
