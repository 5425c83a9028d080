"""
bookram is a python package for computing, bounding, certifying and searching
book Ramsey numbers r(B_m, B_n).

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.
"""

import logging
from importlib.metadata import PackageNotFoundError, version  # pragma: no cover
from importlib.resources import files

from maggma.stores import JSONStore

try:
    # Change here if project is renamed and does not equal the package name
    dist_name = __name__
    __version__ = version(dist_name)
except PackageNotFoundError:  # pragma: no cover
    __version__ = "unknown"
finally:
    del version, PackageNotFoundError

# logging
logger = logging.getLogger("bookram")
logger.setLevel(logging.WARNING)
logger.addHandler(logging.NullHandler())

# create a Store for the table of strongly regular graphs that give exact values
# of r(B_m, B_n). Connecting on import gets the JSON parsing out of the way once.
json_db_file = files("bookram") / "database" / "corollary.json"
CorollaryDB = JSONStore(str(json_db_file), key="params", encoding="utf8")
CorollaryDB.connect()

from bookram.graph import Graph, VertexSet  # noqa: E402
