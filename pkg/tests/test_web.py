# -*- coding: utf-8 -*-
"""Web 接口测试（Flask test client）"""

import pytest

import web_main


@pytest.fixture
def client():
    web_main.app.config['TESTING'] = True
    with web_main.app.test_client() as client:
        yield client


def test_status(client):
    response = client.get('/api/status')
    assert response.status_code == 200
    body = response.get_json()
    assert body['success'] is True
    assert 'csc' in body['result']['commands']


def test_fano(client):
    response = client.post('/api/fano', json={'n': [48, -8], 'm': [60, 45]})
    assert response.status_code == 200
    assert response.get_json()['result']['index'] == 7


def test_ke_table(client):
    result = client.get('/api/ke/table').get_json()['result']
    assert result['rows'] == 28
    assert result['table'][2]['n1'] == 48


def test_ke_family(client):
    result = client.post('/api/ke/family', json={'params': [1, 2, -1, 2]}).get_json()['result']
    assert result['orbifold'] == {'n1': 1, 'n2': -1, 'm0': 1, 'minf': 1}


def test_csc_certificate(client):
    response = client.post('/api/csc', json={'n': [5, 1], 'm': [1, 1], 'r': ['121/145', '2/5']})
    assert response.status_code == 200
    result = response.get_json()['result']
    assert result['roots'][0]['exact'] == '5/2'
    assert result['roots'][0]['class'] == 'quasi-regular'
    assert result['boundary_positive'] is True


def test_topology(client):
    result = client.post('/api/topology', json={'n': [1, 1], 'c': [1, 1, 2]}).get_json()['result']
    assert result['g_reg_order'] == 12


def test_orb_cohomology_without_class(client):
    result = client.post('/api/orb-cohomology', json={'n': [1, 1], 'm': [2, 3]}).get_json()['result']
    assert result['mu'] == 6
    assert 'm7' not in result


def test_join(client):
    result = client.post('/api/join', json={'n': [1, 1], 'm': [1, 1], 'r': '1/2'}).get_json()['result']
    assert result['w'] == [3, 1]
    assert result['l'] == [1, 2]


def test_soliton(client):
    response = client.post('/api/soliton', json={'n': [1, -1], 'm': [1, 1], 'samples': 5})
    result = response.get_json()['result']
    assert result['c']['kind'] == 'exact_zero'
    assert len(result['profile']) == 5


def test_yamazaki(client):
    result = client.post('/api/yamazaki', json={'n': [1, 1], 'r': ['1/3', '1/5']}).get_json()['result']
    assert result['K'] == [[2, 3], [1, 2]]


def test_user_error_is_400(client):
    response = client.post('/api/fano', json={'n': [48, -8]})
    assert response.status_code == 400
    body = response.get_json()
    assert body['success'] is False
    assert body['error']['exit_code'] == 2


def test_non_object_body_is_400(client):
    response = client.post('/api/csc', data='not json', content_type='text/plain')
    assert response.status_code == 400


def test_precondition_failure_is_400(client):
    response = client.post('/api/join', json={'n': [1, -1], 'm': [1, 1], 'r': '1/2'})
    assert response.status_code == 400
    assert response.get_json()['error']['error_code'] == 'WRONG_SIGN_REGIME'
