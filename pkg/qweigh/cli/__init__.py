from .cli import build_parser, dispatch, table_reproduction, main
