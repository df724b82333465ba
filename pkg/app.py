"""
Flask JSON API over the loader, checker and library services
"""
from flask import Flask, request, jsonify

from config import Config, ConfigError
from services.checker import Checker
from services.library import Library, LibraryError
from services.loader import DOMAIN_ERRORS, LoaderError, load_object
from simplicial.box import BoxError
from simplicial.near_ring import NearRingError
from utils.logger import logger

# Initialize Flask app
app = Flask(__name__)

BAD_REQUEST = DOMAIN_ERRORS + (LoaderError, LibraryError, BoxError, NearRingError)

# Initialize services
try:
    Config.validate()
    checker = Checker()
    logger.info("🚀 API initialized successfully")
except ConfigError as e:
    logger.error(f"Configuration error: {e}")
    raise
except Exception as e:
    logger.error(f"Failed to initialize API: {e}")
    raise


def _body() -> dict:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise LoaderError("request body must be a JSON object")
    return data


def _levels(data: dict, top: int) -> list:
    levels = data.get('levels') or list(range(2, top + 1))
    if not all(isinstance(n, int) for n in levels):
        raise LoaderError("levels must be integers")
    return levels


@app.route('/health', methods=['GET'])
def health_check():
    """Health check endpoint"""
    return jsonify({
        "status": "healthy",
        "service": "peiffer-lab",
        "config": {
            "default_top": Config.DEFAULT_TOP,
            "max_arity": Config.MAX_ARITY,
            "order_cap": Config.ORDER_CAP,
            "rank_cap": Config.RANK_CAP,
        },
    }), 200


@app.route('/validate', methods=['POST'])
def validate():
    """Validate any schema object"""
    result = checker.validate(load_object(_body()))
    return jsonify(result.to_dict()), 200


@app.route('/check/<kind>', methods=['POST'])
def check(kind: str):
    """dold-kan, theorem1 or theorem2 on {"object": ..., "levels": [...]}"""
    data = _body()
    if 'object' not in data:
        raise LoaderError("missing field object")
    obj = load_object(data['object'])
    if kind == 'dold-kan':
        results = [checker.dold_kan(obj)]
    elif kind == 'theorem1':
        results = checker.theorem1(obj, _levels(data, getattr(obj, 'top', 0)),
                                   certify=bool(data.get('certify', True)))
    elif kind == 'theorem2':
        results = checker.theorem2(obj, _levels(data, getattr(obj, 'top', 0)))
    else:
        return jsonify({"error": f"unknown check {kind}"}), 404
    logger.info(f"🧪 {kind}: {sum(r.ok for r in results)}/{len(results)} ok")
    return jsonify({"kind": kind, "results": [r.to_dict() for r in results]}), 200


@app.route('/express-degeneracies', methods=['POST'])
def express_degeneracies():
    data = _body()
    if 'J' not in data or 'm' not in data:
        raise LoaderError("body needs J and m")
    result = checker.express_degeneracies(tuple(data['J']), int(data['m']))
    return jsonify(result.to_dict()), 200


@app.route('/decompose', methods=['POST'])
def decompose():
    data = _body()
    for key in ('object', 'level', 'element'):
        if key not in data:
            raise LoaderError(f"missing field {key}")
    G = load_object(data['object'])
    result = checker.decompose(G, int(data['level']), int(data['element']))
    return jsonify(result.to_dict()), 200


@app.route('/library', methods=['GET'])
def library():
    """Names and sizes of the shipped simplicial groups"""
    return jsonify({"entries": Library.listing()}), 200


@app.errorhandler(400)
def bad_request(e):
    """Handle 400 errors"""
    return jsonify({"error": "Bad request"}), 400


def rejected_input(e):
    """Malformed objects and failed preconditions"""
    logger.warning(f"⚠️ Rejected request: {e}")
    return jsonify({"error": str(e)}), 400


for _error in BAD_REQUEST:
    app.register_error_handler(_error, rejected_input)


@app.errorhandler(404)
def not_found(e):
    """Handle 404 errors"""
    return jsonify({"error": "Not found"}), 404


@app.errorhandler(500)
def internal_error(e):
    """Handle 500 errors"""
    logger.error(f"Internal server error: {e}")
    return jsonify({"error": "Internal server error"}), 500


if __name__ == '__main__':
    # Print startup banner
    logger.info("=" * 60)
    logger.info("🔺 PEIFFER-LAB API")
    logger.info("=" * 60)
    logger.info(f"📁 Data folder: {Config.DATA_DIR}")
    logger.info(f"📊 Log level: {Config.LOG_LEVEL}")
    logger.info(f"🌐 Server: http://localhost:5000")
    logger.info("=" * 60)

    app.run(
        host='0.0.0.0',
        port=5000,
        debug=False,
        threaded=True
    )
