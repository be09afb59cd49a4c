import json
from unittest.mock import patch

import pytest

from src.app import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, main, parse_args
from src.models import CheckResult, VerificationReport


class TestParseArgs:
    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            parse_args([])

    def test_repeatable_params(self):
        args = parse_args(['classify', 'cubic-graph', '--image', 'Sr', '--param', 'a20=0.5', '--param', 'a30=2'])
        assert args.param == ['a20=0.5', 'a30=2']
        assert args.image == 'Sr'

    def test_unknown_image(self):
        with pytest.raises(SystemExit):
            parse_args(['classify', 'plane', '--image', 'Xx'])

    def test_samples_minimum(self):
        with pytest.raises(SystemExit):
            parse_args(['analyze', 'plane', '--samples', '1'])


class TestCatalogCommand:
    def test_text(self, capsys):
        assert main(['catalog']) == EXIT_OK
        out = capsys.readouterr().out
        assert 'plane' in out
        assert 'cubic-graph' in out
        assert 'a30=1' in out

    def test_json(self, capsys):
        assert main(['catalog', '--format', 'json']) == EXIT_OK
        entries = json.loads(capsys.readouterr().out)
        assert [e['id'] for e in entries] == ['plane', 'hyperbolic', 'cylinder', 'cubic-graph']


class TestAnalyzeCommand:
    def test_csv(self, capsys):
        assert main(['analyze', 'plane', '--samples', '3']) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith('s,t_param,kappa_n,kappa_g,tau_g,delta_Tr')
        assert len(lines) == 4

    def test_output_file(self, tmp_path):
        target = tmp_path / 'table.json'
        assert main(['analyze', 'hyperbolic', '--samples', '2', '--format', 'json', '-o', str(target)]) == EXIT_OK
        rows = json.loads(target.read_text())
        assert len(rows) == 2
        assert rows[0]['delta_Tr'] == pytest.approx(1.0, abs=1e-9)

    def test_bad_param(self):
        assert main(['analyze', 'plane', '--param', 'oops']) == EXIT_INPUT_ERROR

    def test_unknown_scene(self):
        assert main(['analyze', 'no-such-scene']) == EXIT_INPUT_ERROR


class TestClassifyCommand:
    def test_identically_zero(self, capsys):
        assert main(['classify', 'plane', '--image', 'Tr', '--grid', '8']) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report['kind'] == 'Tr'
        assert report['identically_zero'] is True

    def test_guard_fails_everywhere(self, capsys):
        assert main(['classify', 'plane', '--image', 'So', '--grid', '8']) == EXIT_VERIFICATION_FAILED
        payload = json.loads(capsys.readouterr().out)
        assert payload['error'] == 'DomainViolation'

    def test_order_too_low(self):
        assert main(['classify', 'plane', '--image', 'Tr', '--order', '4']) == EXIT_INPUT_ERROR

    def test_cusp(self, capsys):
        assert main(['classify', 'cubic-graph', '--image', 'Sr', '--grid', '32']) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert any(p['classification'] == 'Cusp' and abs(p['s0']) < 1e-6 for p in report['points'])


class TestVerifyCommand:
    def test_passes(self, capsys):
        assert main(['verify', 'hyperbolic', '--samples', '3']) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload['passed'] is True
        assert payload['samples'] == 3

    @patch('src.app.verify_scene')
    def test_failure_exit_code(self, mock_verify, capsys):
        mock_verify.return_value = VerificationReport(scene='plane', samples=2, checks=[
            CheckResult(name='frenet_system', worst=1.0, tolerance=1e-8, evaluated=2, passed=False),
        ])
        assert main(['verify', 'plane', '--samples', '2']) == EXIT_VERIFICATION_FAILED
        assert json.loads(capsys.readouterr().out)['passed'] is False


class TestExportCommand:
    def test_csv(self, capsys):
        assert main(['export', 'cylinder', '--image', 'So', '--samples', '3']) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == 's,x0,x1,x2'
        assert len(lines) == 4

    def test_svg_file(self, tmp_path):
        target = tmp_path / 'sr.svg'
        code = main(['export', 'cubic-graph', '--image', 'Sr', '--format', 'svg', '--samples', '6',
                     '--grid', '16', '-o', str(target)])
        assert code == EXIT_OK
        assert target.read_text().startswith('<svg')

    def test_undefined_image(self):
        assert main(['export', 'plane', '--image', 'Lo', '--samples', '3']) == EXIT_VERIFICATION_FAILED


class TestClassifyAgreesWithAnalyze:
    def test_cusps_sit_on_delta_sign_changes(self, capsys):
        """Each reported cusp lies in a cell where the analyzed delta column changes sign."""
        assert main(['classify', 'cubic-graph', '--image', 'Sr', '--grid', '64']) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert main(['analyze', 'cubic-graph', '--samples', '16', '--format', 'json']) == EXIT_OK
        rows = json.loads(capsys.readouterr().out)
        cusps = [p['s0'] for p in report['points'] if p['classification'] == 'Cusp']
        assert cusps
        for s0 in cusps:
            cell = next(i for i in range(len(rows) - 1) if rows[i]['s'] <= s0 <= rows[i + 1]['s'])
            assert rows[cell]['delta_Sr'] * rows[cell + 1]['delta_Sr'] <= 0.0
