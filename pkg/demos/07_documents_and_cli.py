"""
Frame documents and the command line
====================================

Frames travel as JSON documents with explicit [re, im] pairs.  The
``proframe`` command reads them; here it is driven in-process.
"""

import tempfile
from pathlib import Path

from proframe import ModuleSpace
from proframe.cli import main
from proframe.document import FrameDocument, dumps_document, parse_document
from proframe.frames import gen_frame

space = ModuleSpace((1, 2), 2)
doc = FrameDocument(space.signature, space.rank, frames={"F": gen_frame(3, space, 3)})

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "frame.json"
    path.write_text(dumps_document(doc))
    assert parse_document(path) == doc
    code = main(["bounds", str(path)])
    print("exit code", code)
    main(["dual", str(path), "--out", str(Path(tmp) / "dual.json")])
    code = main(["verify-dual", str(Path(tmp) / "dual.json"), "--frame", "F", "--other", "F_dual", "--json"])
    print("exit code", code)
