import pytest

from app import app


@pytest.fixture
def client():
    app.config['TESTING'] = True
    with app.test_client() as client:
        yield client


def test_health(client):
    response = client.get('/health')
    assert response.status_code == 200
    body = response.get_json()
    assert body['status'] == 'healthy'
    assert body['config']['order_cap'] > 0


def test_library(client):
    entries = client.get('/library').get_json()['entries']
    assert {'cm_s3_s3', 'pcm_d6', 'kc_z4_shifted'} <= {e['name'] for e in entries}


def test_validate(client):
    doc = {'type': 'chain_complex', 'ranks': [1, 1], 'boundaries': [[[2]]]}
    response = client.post('/validate', json=doc)
    assert response.status_code == 200
    assert response.get_json()['ok']


def test_theorem2_on_a_library_reference(client):
    response = client.post('/check/theorem2', json={'object': {'type': 'library', 'name': 'cm_s3_s3'}})
    assert response.status_code == 200
    result = response.get_json()['results'][0]
    assert result['name'] == 'theorem2 n=2'
    assert result['verdict'] == 'equal'


def test_dold_kan(client):
    doc = {'type': 'chain_complex', 'ranks': [1, 1], 'boundaries': [[[2]]]}
    result = client.post('/check/dold-kan', json={'object': doc}).get_json()['results'][0]
    assert result['ok']


def test_express_degeneracies(client):
    body = client.post('/express-degeneracies', json={'J': [1], 'm': 2}).get_json()
    assert body['expression'] == "−s_1 + s_0"


def test_decompose(client):
    body = client.post('/decompose', json={
        'object': {'type': 'library', 'name': 'cm_z4_z2'}, 'level': 2, 'element': 5,
    }).get_json()
    assert body['ok']
    assert body['recomposed'] == body['element']


def test_unknown_check(client):
    response = client.post('/check/sheaf', json={'object': {'type': 'library', 'name': 'cm_z2_z2'}})
    assert response.status_code == 404


def test_unknown_route(client):
    response = client.get('/nowhere')
    assert response.status_code == 404
    assert response.get_json() == {'error': 'Not found'}


def test_body_must_be_an_object(client):
    response = client.post('/validate', data='not json', content_type='application/json')
    assert response.status_code == 400
    assert 'JSON object' in response.get_json()['error']


def test_invalid_object_is_a_bad_request(client):
    response = client.post('/validate', json={'type': 'chain_complex', 'ranks': [1, 1], 'boundaries': []})
    assert response.status_code == 400
    assert 'chain_complex' in response.get_json()['error']


def test_missing_fields(client):
    assert client.post('/express-degeneracies', json={'J': [1]}).status_code == 400
    assert client.post('/decompose', json={'level': 1}).status_code == 400


def test_gunicorn_entrypoint_exposes_the_app():
    import main
    assert main.app is app
