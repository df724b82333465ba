"""CLI package"""
from cli.handlers import CommandHandlers, render
from cli.messages import Messages
from cli.states import CheckKinds, Command, ExitCode, RunConfig
from cli.validators import Validators
