"""Services package"""
from services.loader import LoaderError, dump_object, load_file, load_object
from services.library import Library, LibraryError
from services.generator import Generator, GeneratorError
from services.checker import Checker, CheckResult
