# Types.
from typing import List

# Path standard class.
from pathlib import Path

# Click test runner.
from click.testing import CliRunner, Result

# Command line.
from mirrorphase.cli.main import cli

SWEEP: List[str] = [
    "sweep", "--axis", "noise_ratio", "--values", "0.1,0.3", "--n", "60", "--m", "200", "--k", "3",
    "--iters", "400", "--trials", "3", "--metric", "oracle", "--metric", "holdout", "--seed", "15",
]
FIGURE: List[str] = ["figure", "--name", "1-left", "--scale", "0.05", "--trials", "2", "--seed", "15"]


def artifacts(directory: Path) -> List[Path]:
    return sorted(path.relative_to(directory) for path in directory.iterdir())


# Test repeated invocations write byte-identical artifacts.
def cli_determinism_test(tmp_path: Path) -> None:
    for arguments in (SWEEP, FIGURE):
        for name in ("first", "second"):
            result: Result = CliRunner().invoke(cli, ["--output-dir", str(tmp_path / name), *arguments, "--threads", "1"])
            assert result.exit_code == 0, result.output

    assert artifacts(tmp_path / "first") == artifacts(tmp_path / "second")
    assert len(artifacts(tmp_path / "first")) == 4
    for path in artifacts(tmp_path / "first"):
        assert (tmp_path / "first" / path).read_bytes() == (tmp_path / "second" / path).read_bytes()


# Test worker processes write the same CSV as a serial run.
def threads_determinism_test(tmp_path: Path) -> None:
    for (name, threads) in (("serial", "1"), ("parallel", "2")):
        result: Result = CliRunner().invoke(cli, ["--output-dir", str(tmp_path / name), *SWEEP, "--threads", threads])
        assert result.exit_code == 0, result.output
    assert (tmp_path / "serial" / "sweep.csv").read_bytes() == (tmp_path / "parallel" / "sweep.csv").read_bytes()
