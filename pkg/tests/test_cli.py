# -*- coding: utf-8 -*-
import json

import nilcount


def run(capsys, *argv):
    status = nilcount.main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_bounds_csv(capsys):
    status, out, _ = run(capsys, 'bounds', '--kind', 'identity', '--n', '3..5')
    assert status == 0
    assert out == 'n,identity\n3,6\n4,180\n5,11720\n'


def test_bounds_rational(capsys):
    status, out, _ = run(capsys, 'bounds', '--kind', 'commutative_semirigid_bound', '--n', '5', '--rational')
    assert status == 0
    assert out.splitlines()[1] == '5,22,45/2'


def test_bounds_terms_json(capsys):
    status, out, _ = run(capsys, 'bounds', '--kind', 'semirigid_iso_bound', '--n', '4', '--terms',
                         '--format', 'json')
    assert status == 0
    data = json.loads(out)
    assert data[0]['value'] == '9'
    assert [term['lambda'] for term in data[0]['terms']] == ['1^1', '2^1', '1^2']


def test_rank_stratified_takes_rank(capsys):
    status, out, _ = run(capsys, 'bounds', '--kind', 'rank_stratified', '--n', '1..2')
    assert status == 0
    assert out == 'n,rank_stratified\n1,1\n2,51\n'


def test_bounds_rejects_unknown_kind(capsys):
    status, _, err = run(capsys, 'bounds', '--kind', 'bogus', '--n', '3..4')
    assert status == 2
    assert 'bogus' in err


def test_bounds_rejects_small_order(capsys):
    status, out, _ = run(capsys, 'bounds', '--kind', 'identity', '--n', '2..4')
    assert status == 2
    assert out == ''


def test_table_t1_json(capsys):
    status, out, _ = run(capsys, 'table', 'T1', '--n', '3..4', '--format', 'json')
    assert status == 0
    data = json.loads(out)
    assert data['columns'] == ['identity', 'presentation']
    assert data['rows'] == [
        {'n': 3, 'identity': '6', 'presentation': '1'},
        {'n': 4, 'identity': '180', 'presentation': '15'},
    ]


def test_table_marks_oracle_cells_beyond_cap(capsys):
    status, out, err = run(capsys, 'table', 'T3', '--n', '7')
    assert status == 0
    assert out == 'n,iso_semirigid,semirigid_iso_bound,iso_exact\n7,-,1199370,1199989\n'
    assert '--allow-slow' in err


def test_table_runs_census_within_cap(capsys):
    status, out, _ = run(capsys, 'table', 'T5', '--n', '4..5')
    assert status == 0
    assert out == 'n,equivalence_semirigid,equivalence_semirigid_bound,equivalence\n4,8,8,8\n5,81,83,84\n'


def test_table_to_file(tmp_path, capsys):
    target = tmp_path / 't2.csv'
    status, out, _ = run(capsys, 'table', 'T2', '--n', '3..4', '--output', str(target))
    assert status == 0
    assert out == ''
    assert target.read_text(encoding='utf-8') == (
        'n,commutative_identity,commutative_presentation\n3,6,1\n4,84,7\n')


def test_unknown_table(capsys):
    status, _, _ = run(capsys, 'table', 'T7')
    assert status == 2


def test_exact(capsys):
    status, out, _ = run(capsys, 'exact', '--n', '3..6')
    assert status == 0
    assert out == 'n,iso_exact\n3,1\n4,9\n5,118\n6,4671\n'


def test_exact_per_rank_quotes_lambda(capsys):
    status, out, _ = run(capsys, 'exact', '--n', '5', '--per-rank')
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == 'n,r,lambda,term'
    assert '5,3,"1^1,2^1",' in out
    assert len(lines) == 1 + 6


def test_fixed(capsys):
    status, out, _ = run(capsys, 'fixed', '--lambda', '2^1', '--k', '2')
    assert status == 0
    assert out == 'lambda,k,fixed\n2^1,2,5\n'
    status, out, _ = run(capsys, 'fixed', '--lambda', '2^1', '--k', '2', '--semirigid', '--format', 'json')
    assert json.loads(out)['fixed'] == '1'


def test_fixed_rejects_bad_lambda(capsys):
    status, _, _ = run(capsys, 'fixed', '--lambda', 'x', '--k', '1')
    assert status == 2


def test_oracle_census_report(capsys):
    status, out, _ = run(capsys, 'oracle', '--n', '4')
    assert status == 0
    data = json.loads(out)
    assert data['counts']['iso'] == '9'
    assert data['counts']['iso_rigid'] == '6'
    status, out, _ = run(capsys, 'oracle', '--n', '4', '--report', 'csv')
    header, row = out.splitlines()
    assert dict(zip(header.split(','), row.split(',')))['equivalence'] == '8'


def test_oracle_census_requires_allow_slow(capsys):
    status, _, err = run(capsys, 'oracle', '--n', '7')
    assert status == 2
    assert '--allow-slow' in err


def test_oracle_fixed(capsys):
    status, out, _ = run(capsys, 'oracle', 'fixed', '--r', '2', '--k', '1', '--perm', '(1 2)')
    assert status == 0
    assert out == 'r,k,twisted,fixed\n2,1,0,3\n'
    status, _, _ = run(capsys, 'oracle', 'fixed', '--r', '2')
    assert status == 2


def test_stats(capsys):
    status, out, _ = run(capsys, 'stats', '--lambda', '1^2')
    assert status == 0
    data = json.loads(out)
    assert data['r'] == 2
    assert data['zeta'] == 1
    assert data['eta'] == 2
    assert data['gamma'] == 3
    assert data['ccycles'] == {'1': 4}


def test_cache_commands(tmp_path, capsys, fresh_table):
    path = str(tmp_path / 'stirling.bin')
    assert run(capsys, 'cache', 'save', '--cache', path, '--rows', '20')[0] == 0
    assert run(capsys, 'cache', 'load', '--cache', path)[0] == 0
    assert fresh_table.max_n >= 20
    assert run(capsys, 'cache', 'clear', '--cache', path)[0] == 0
    assert run(capsys, 'cache', 'load', '--cache', path)[0] == 1


def test_cache_requires_path(capsys):
    assert run(capsys, 'cache', 'save')[0] == 2


def test_warm_cache_gives_identical_output(tmp_path, capsys, fresh_table):
    path = str(tmp_path / 'stirling.bin')
    _, cold, _ = run(capsys, 'table', 'T1', '--cache', path)
    _, warm, _ = run(capsys, 'table', 'T1', '--cache', path)
    assert cold == warm
    assert cold.splitlines()[-1] == '10,90116197775746464859791750,120455109059841172414778'


def test_corrupted_cache_is_recomputed(tmp_path, capsys, fresh_table):
    path = tmp_path / 'stirling.bin'
    path.write_bytes(b'\x00' * 64)
    status, out, err = run(capsys, 'bounds', '--kind', 'presentation', '--n', '10', '--cache', str(path))
    assert status == 0
    assert out == 'n,presentation\n10,120455109059841172414778\n'


def test_common_flags_before_subcommand(capsys):
    before = run(capsys, '--format', 'json', 'bounds', '--kind', 'identity', '--n', '3..4')
    after = run(capsys, 'bounds', '--kind', 'identity', '--n', '3..4', '--format', 'json')
    assert before[0] == after[0] == 0
    assert before[1] == after[1]
    assert json.loads(before[1])['rows'][0]['n'] == 3


def test_subcommand_defaults_keep_leading_flags():
    args = nilcount.build_parser().parse_args(['--threads', '3', '-v', 'table', 'T1'])
    assert args.threads == 3
    assert args.verbose == 1
    assert args.format == 'csv'
    assert not args.allow_slow
    assert args.cache is None
    args = nilcount.build_parser().parse_args(['table', 'T1', '--threads', '2'])
    assert args.threads == 2


def test_allow_slow_help_gives_runtime_in_minutes():
    text = nilcount.build_parser().format_help()
    assert '--allow-slow' in text
    assert '8进程约8分钟' in text
    assert '小时' not in text
