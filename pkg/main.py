"""Gunicorn entrypoint: `gunicorn main:app`"""
from app import app
