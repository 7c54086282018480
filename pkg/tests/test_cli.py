import json

import pytest

from sensorbandit.cli import build_parser, main, oracle_check


def write_config(tmp_path, **overrides):
    data = {
        'name': 'cli',
        'rate': 'unimodal',
        'horizon': 20,
        'replications': 2,
        'policies': [{'kind': 'thompson', 'label': 'ts'}],
    }
    data.update(overrides)
    path = tmp_path / 'config.json'
    path.write_text(json.dumps(data))
    return path


def error_line(capsys):
    lines = capsys.readouterr().err.strip().splitlines()
    return json.loads(lines[-1])


class TestRun:

    def test_writes_traces(self, tmp_path, capsys):
        out = tmp_path / 'results'
        assert main(['run', '--config', str(write_config(tmp_path)), '--out', str(out)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['experiment'] == 'cli'
        assert (out / 'cli.csv').exists()
        assert (out / 'cli_summary.json').exists()

    def test_overrides(self, tmp_path):
        out = tmp_path / 'results'
        main(['run', '--config', str(write_config(tmp_path)), '--out', str(out), '--seed', '9', '--replications', '1'])
        summary = json.loads((out / 'cli_summary.json').read_text())
        assert summary['config']['seed'] == 9
        assert len(summary['policies']['ts']['bound_checks']) == 1

    def test_same_seed_same_bytes(self, tmp_path):
        config = str(write_config(tmp_path))
        for name in ('a', 'b'):
            main(['run', '--config', config, '--out', str(tmp_path / name), '--seed', '4'])
        assert (tmp_path / 'a' / 'cli.csv').read_bytes() == (tmp_path / 'b' / 'cli.csv').read_bytes()

    def test_missing_config(self, tmp_path, capsys):
        assert main(['run', '--config', str(tmp_path / 'nope.json')]) == 1
        error = error_line(capsys)
        assert error['error'] == 'FileNotFoundError'

    def test_invalid_config(self, tmp_path, capsys):
        path = write_config(tmp_path, horizon=0)
        assert main(['run', '--config', str(path)]) == 1
        error = error_line(capsys)
        assert error['error'] == 'ConfigError'
        assert 'horizon' in error['message']

    def test_invalid_override(self, tmp_path, capsys):
        assert main(['run', '--config', str(write_config(tmp_path)), '--replications', '0']) == 1
        assert error_line(capsys)['error'] == 'ConfigError'


class TestOracleCheck:

    def test_passes(self, capsys):
        assert main(['oracle-check', '--instances', '60']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report == {'passed': 60, 'failed': 0, 'failures': []}

    def test_function(self):
        assert oracle_check(25, seed=3)['passed'] == 25


class TestDescribe:

    def test_preset(self, capsys):
        assert main(['describe', '--experiment', 'bimodal']) == 0
        config = json.loads(capsys.readouterr().out)
        assert config['cost'] == 2.0
        assert config['initial_bins'] == 16

    def test_file(self, tmp_path, capsys):
        assert main(['describe', '--config', str(write_config(tmp_path))]) == 0
        assert json.loads(capsys.readouterr().out)['horizon'] == 20


class TestParser:

    def test_unknown_experiment_exits_two(self):
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args(['replicate-paper', '--experiment', 'trimodal', '--out', 'x'])
        assert excinfo.value.code == 2

    def test_command_required(self):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == 2


@pytest.mark.slow
class TestReplicateCommand:

    def test_identical_bytes(self, tmp_path):
        for name in ('a', 'b'):
            args = ['replicate-paper', '--experiment', 'unimodal', '--out', str(tmp_path / name), '--seed', '1']
            assert main(args) == 0
        assert (tmp_path / 'a' / 'unimodal.csv').read_bytes() == (tmp_path / 'b' / 'unimodal.csv').read_bytes()
