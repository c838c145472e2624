from .awaiting import AwaitingIO
from .base import (
    BaseIO,
    build_manifest,
    dump_document,
    render_csv,
    render_svg
)
from .blocking import BlockingIO


_blocking = BlockingIO()

load_device = _blocking.load_device
load_graph = _blocking.load_graph
load_plan = _blocking.load_plan
load_schedule = _blocking.load_schedule
save_device = _blocking.save_device
save_graph = _blocking.save_graph
save_plan = _blocking.save_plan
save_schedule = _blocking.save_schedule


__all__ = [
    "AwaitingIO",
    "BaseIO",
    "BlockingIO",
    "build_manifest",
    "dump_document",
    "render_csv",
    "render_svg",
    "load_device",
    "load_graph",
    "load_plan",
    "load_schedule",
    "save_device",
    "save_graph",
    "save_plan",
    "save_schedule"
]
