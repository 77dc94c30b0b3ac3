from __future__ import annotations

import os
import signal
import subprocess
import sys
from pathlib import Path
from typing import TYPE_CHECKING

import pytest

from lattice_count.cli import _cli as cli_module
from lattice_count.cli.__main__ import _install_sigterm_handler, _raise_keyboard_interrupt, run

if TYPE_CHECKING:
    from collections.abc import Iterator

    from lattice_count.decompose import DecompStats, EngineOptions
    from lattice_count.genfun import GenFun
    from lattice_count.polytope import HRep

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def _restore_sigterm_handler() -> Iterator[None]:
    # run() installs a process-wide handler; put back whatever was there.
    original = signal.getsignal(signal.SIGTERM)
    yield
    signal.signal(signal.SIGTERM, original)


def _run_module(*args: str) -> subprocess.CompletedProcess[str]:
    return subprocess.run(  # noqa: S603
        [sys.executable, "-m", "lattice_count.cli", *args],
        capture_output=True,
        text=True,
        check=False,
        timeout=30,
    )


def test_raise_keyboard_interrupt_raises_keyboard_interrupt() -> None:
    with pytest.raises(KeyboardInterrupt):
        _raise_keyboard_interrupt(signal.SIGTERM, None)


def test_install_sigterm_handler_registers_handler() -> None:
    _install_sigterm_handler()

    assert signal.getsignal(signal.SIGTERM) is _raise_keyboard_interrupt


def test_install_sigterm_handler_degrades_when_signal_signal_unavailable(
    monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture
) -> None:
    original_handler = signal.getsignal(signal.SIGTERM)

    def _raise_value_error(*_args: object, **_kwargs: object) -> None:
        msg = "signal only works in main thread of the main interpreter"
        raise ValueError(msg)

    monkeypatch.setattr(signal, "signal", _raise_value_error)

    with caplog.at_level("DEBUG"):
        _install_sigterm_handler()

    assert signal.getsignal(signal.SIGTERM) is original_handler
    assert "Could not install a SIGTERM handler" in caplog.text


def test_run_prints_message_and_returns_one_on_keyboard_interrupt(
    monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    def _interrupted(_argv: list[str] | None = None) -> int:
        raise KeyboardInterrupt

    monkeypatch.setattr("lattice_count.cli.__main__.main", _interrupted)

    assert run([]) == 1
    assert "Interrupted." in capsys.readouterr().err


def test_run_returns_mains_exit_code_normally(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr("lattice_count.cli.__main__.main", lambda _argv=None: 0)

    assert run([]) == 0


def test_real_sigterm_mid_count_stops_gracefully(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    """SIGTERM delivered from inside the engine unwinds through run() before
    anything reaches stdout.
    """
    path = tmp_path / "square.hrep"
    path.write_text((FIXTURES / "unit_square.hrep").read_text())
    real = cli_module.genfun_polytope

    def _genfun_then_sigterm(p: HRep, options: EngineOptions) -> tuple[GenFun, DecompStats]:
        result = real(p, options)
        os.kill(os.getpid(), signal.SIGTERM)
        return result

    monkeypatch.setattr(cli_module, "genfun_polytope", _genfun_then_sigterm)

    exit_code = run(["count", str(path)])

    captured = capsys.readouterr()
    assert exit_code == 1
    assert captured.out == ""
    assert "Interrupted." in captured.err


def test_real_invocation_counts_a_fixture() -> None:
    completed_process = _run_module("count", str(FIXTURES / "unit_square.hrep"))

    assert completed_process.returncode == 0
    assert completed_process.stdout == "4\n"
    assert completed_process.stderr == ""


def test_real_invocation_does_not_leak_a_traceback_onto_stderr(tmp_path: Path) -> None:
    """Outside pytest nothing configures logging, so any stray warning would
    reach `logging.lastResort`. Only a subprocess observes that.
    """
    directory = tmp_path / "not_a_file.hrep"
    directory.mkdir()

    completed_process = _run_module("count", str(directory))

    assert completed_process.returncode == 1
    assert completed_process.stdout == ""
    assert "Traceback" not in completed_process.stderr
    assert completed_process.stderr == f"{directory}: error: Is a directory\n"


def test_verbose_flag_surfaces_the_underlying_exception_on_stderr(tmp_path: Path) -> None:
    directory = tmp_path / "not_a_file.hrep"
    directory.mkdir()

    completed_process = _run_module("--verbose", "count", str(directory))

    assert completed_process.returncode == 1
    assert f"{directory}: error: Is a directory" in completed_process.stderr
    assert "Traceback (most recent call last):" in completed_process.stderr
    assert "IsADirectoryError" in completed_process.stderr


def test_verbose_flag_does_not_change_the_count() -> None:
    path = str(FIXTURES / "cube3.hrep")

    quiet = _run_module("count", "--max-index", "500", path)
    verbose = _run_module("--verbose", "count", "--max-index", "500", path)

    assert quiet.returncode == verbose.returncode == 0
    assert quiet.stdout == verbose.stdout == "1030301\n"
    assert quiet.stderr == ""
    assert "lattice_count" in verbose.stderr
