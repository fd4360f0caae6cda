import os
import subprocess


def test_cli_help_lists_stages_and_parameters(capfd):
    os.system('golayft --help')
    captured = capfd.readouterr()
    assert 'golayft parameters' in captured.out
    assert 'usage' in captured.out
    assert 'threshold' in captured.out
    assert '--k_good_profile' in captured.out


def test_cli_version_appears_when_golayft_is_called_locally(capfd):
    os.system('python -m golayft --version')
    captured = capfd.readouterr()
    assert 'golayft v' in captured.out


def test_cli_code_stage_runs_with_output(tmpdir):
    res = subprocess.run(['golayft', 'code', '--code', 'steane', '--save_path0', str(tmpdir)],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert 'steane: n=7' in res.stdout
    assert tmpdir.join('code_run.json').check()


def test_cli_exits_with_usage_error_without_a_stage():
    res = subprocess.run(['golayft'], capture_output=True, text=True)
    assert res.returncode == 2
    assert 'usage: golayft' in res.stdout


def test_cli_reports_unknown_code(tmpdir):
    res = subprocess.run(['golayft', 'code', '--code', 'hamming', '--save_path0', str(tmpdir)],
                         capture_output=True, text=True)
    assert res.returncode == 2
    assert "ERROR: unknown code 'hamming'" in res.stdout
