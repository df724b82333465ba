import json
from pathlib import Path

import pytest

from cli.__main__ import main
from cli.states import ExitCode
from cli.validators import Validators
from config import Config

DATA = Path(__file__).resolve().parent.parent / 'data'


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    for name in ('DEFAULT_TOP', 'MAX_ARITY', 'JOBS'):
        monkeypatch.setattr(Config, name, getattr(Config, name))
    monkeypatch.setattr(Config, 'DATA_DIR', str(tmp_path / 'data'))


def run_json(capsys, *argv):
    status = main([*argv, '--format', 'json'])
    return status, json.loads(capsys.readouterr().out)


def test_validate_library_entry(capsys):
    status, report = run_json(capsys, 'validate', 'lib:cm_s3_s3')
    assert status == ExitCode.OK
    assert report['results'][0]['ok']
    assert report['exit_status'] == 0


def test_validate_names_the_broken_identity(capsys):
    status, report = run_json(capsys, 'validate', str(DATA / 'broken_module.json'))
    assert status == ExitCode.VIOLATION
    assert report['results'][0]['violation']['identity'] == "d_1 s_0 = id"


def test_truncated_input_is_malformed(capsys, tmp_path):
    path = tmp_path / 'cut.json'
    path.write_text('{"type": "chain_complex", "ranks": [1, 1], "bound', encoding='utf-8')
    status, report = run_json(capsys, 'validate', str(path))
    assert status == ExitCode.MALFORMED
    assert 'not valid JSON' in report['error']


def test_missing_input_is_rejected_before_running(capsys, tmp_path):
    assert main(['validate', str(tmp_path / 'absent.json')]) == ExitCode.MALFORMED
    assert '❌' in capsys.readouterr().err


def test_bad_levels_are_rejected(capsys):
    assert main(['check', 'theorem2', 'lib:cm_s3_s3', '--levels', '1']) == ExitCode.MALFORMED


def test_json_reports_are_deterministic(capsys):
    first = run_json(capsys, 'check', 'theorem2', 'lib:pcm_d6')
    second = run_json(capsys, 'check', 'theorem2', 'lib:pcm_d6')
    assert first == second
    status, report = first
    assert status == ExitCode.OK
    assert report['results'][0]['verdict'] == 'equal'


def test_missing_hypothesis_is_not_a_failure(capsys):
    status, report = run_json(capsys, 'check', 'theorem2', 'lib:kc_z4_shifted')
    assert status == ExitCode.OK
    assert report['results'][0]['hypothesis'] == 'fails'


def test_wrong_correction_side_is_a_violation(capsys):
    status, report = run_json(capsys, 'check', 'phi', 'lib:pcm_d6', '--correction', 'first')
    assert status == ExitCode.VIOLATION
    assert report['results'][0]['commutation'] is not None


def test_theorem1_on_the_symmetric_example(capsys):
    status, report = run_json(capsys, 'check', 'theorem1', 'lib:sym_z2_deg1', '--levels', '2')
    assert status == ExitCode.OK
    assert report['results'][0]['verdict'] == 'equal'


def test_seeded_dold_kan_without_inputs(capsys):
    status, report = run_json(capsys, 'check', 'dold-kan', '--top', '2', '--seed', '7')
    assert status == ExitCode.OK
    assert [r['name'] for r in report['results']] == ['dold-kan (complex)', 'dold-kan (simplicial)']


def test_express_degeneracies(capsys):
    status, report = run_json(capsys, 'express-degeneracies', '1', '2')
    assert status == ExitCode.OK
    assert report['results'][0]['expression'] == "−s_1 + s_0"


def test_express_degeneracies_text(capsys):
    assert main(['express-degeneracies', '0,1', '3']) == ExitCode.OK
    assert 'phi_{0,1} on level 3' in capsys.readouterr().out


def test_decompose_by_label_or_index(capsys):
    status, report = run_json(capsys, 'decompose', 'lib:cm_s3_s3', '--level', '2', '--element', '17')
    assert status == ExitCode.OK
    assert report['results'][0]['recomposed'] == report['results'][0]['element']
    status, report = run_json(capsys, 'decompose', 'lib:cm_s3_s3', '--level', '2', '--element', '9999')
    assert status == ExitCode.MALFORMED
    assert 'not found' in report['error']


def test_decompose_needs_a_query(capsys):
    assert main(['decompose', 'lib:cm_s3_s3']) == ExitCode.MALFORMED


def test_generate_writes_a_valid_document(capsys, tmp_path):
    out = tmp_path / 'kc.json'
    status, report = run_json(capsys, 'generate', 'kc', '--top', '2', '--out', str(out))
    assert status == ExitCode.OK
    assert json.loads(out.read_text(encoding='utf-8'))['type'] == 'k_complex'
    assert report['results'][0]['kind'] == 'kc'


def test_generate_into_the_data_dir(capsys):
    assert main(['generate', 'crossed-module', '--group', 'cyclic:3', '--top', '1']) == ExitCode.OK
    assert (Path(Config.DATA_DIR) / 'crossed-module-42.json').is_file()


def test_library_export(capsys):
    status, report = run_json(capsys, 'library', '--export')
    assert status == ExitCode.OK
    assert any(row['name'] == 'pcm_d6' for row in report['results'])
    assert (Path(Config.DATA_DIR) / 'sym_z2_deg1.json').is_file()


def test_report_goes_to_out_file(capsys, tmp_path):
    out = tmp_path / 'report.txt'
    assert main(['validate', 'lib:c_z_mult2', '--out', str(out)]) == ExitCode.OK
    assert 'validate' in out.read_text(encoding='utf-8')
    assert capsys.readouterr().out == ''


class TestValidators:

    def test_parse_subset(self):
        assert Validators.parse_subset('{0, 2}') == (True, (0, 2))
        assert Validators.parse_subset('') == (True, ())
        assert not Validators.parse_subset('2,1')[0]
        assert not Validators.parse_subset('a')[0]

    def test_parse_group(self):
        assert Validators.parse_group('dihedral:4') == (True, {'dihedral': 4})
        assert not Validators.parse_group('klein')[0]

    def test_collect(self):
        verdict = Validators.collect([(True, None), (False, 'x'), (False, 'y')])
        assert verdict == {'ok': False, 'errors': ['x', 'y']}
