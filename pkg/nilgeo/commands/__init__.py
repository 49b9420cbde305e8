from .compute import register as register_compute
from .execute_command import command_map, execute_command, icons
from .list_entries import register as register_list
from .show import register as register_show
from .solve import register as register_solve
from .verify import register as register_verify

registrations = [register_list, register_show, register_verify, register_compute, register_solve]

__all__ = ["command_map", "execute_command", "icons", "registrations"]
