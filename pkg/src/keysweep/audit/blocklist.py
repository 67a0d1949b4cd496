"""Compromised-key blocklists keyed by SHA-256 of the wire blob.

File format: a header line `# blocklist: <list-id>`, then one lowercase hex
SHA-256 fingerprint per line. Comment lines (#) and blanks are allowed.
Full-size lists (Debian weak keys et al.) are external inputs; small sample
lists ship with the package for tests and vector generation.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..wire import PublicKey, encode_key_blob


class MalformedBlocklistFileError(ValueError):
    pass


_HEADER = re.compile(r"^#\s*blocklist:\s*(?P<list_id>[A-Za-z0-9._-]+)\s*$")
_ENTRY = re.compile(r"^[0-9a-f]{64}$")


def blob_digest(blob: bytes) -> str:
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class BlocklistHit:
    list_id: str
    entry: str


class BlocklistSet:
    def __init__(self):
        self._lists: dict[str, frozenset[str]] = {}

    @property
    def list_ids(self) -> list[str]:
        return sorted(self._lists)

    def load_file(self, path) -> str:
        """Load one blocklist file; returns its list id."""
        lines = Path(path).read_text().splitlines()
        list_id = None
        entries = set()
        for lineno, line in enumerate(lines, 1):
            line = line.strip()
            if not line:
                continue
            header = _HEADER.match(line)
            if header:
                if list_id is not None:
                    raise MalformedBlocklistFileError(
                        f"{path}:{lineno}: duplicate header")
                list_id = header.group("list_id")
                continue
            if line.startswith("#"):
                continue
            if list_id is None:
                raise MalformedBlocklistFileError(
                    f"{path}:{lineno}: entry before '# blocklist: <id>' header")
            if not _ENTRY.match(line):
                raise MalformedBlocklistFileError(
                    f"{path}:{lineno}: not a hex sha256 fingerprint")
            entries.add(line)
        if list_id is None:
            raise MalformedBlocklistFileError(f"{path}: missing blocklist header")
        self._lists[list_id] = frozenset(entries) | self._lists.get(list_id, frozenset())
        return list_id

    def load_directory(self, directory) -> list[str]:
        return [self.load_file(p) for p in sorted(Path(directory).glob("*.txt"))]

    def check_blob(self, blob: bytes) -> BlocklistHit | None:
        digest = blob_digest(blob)
        for list_id, entries in sorted(self._lists.items()):
            if digest in entries:
                return BlocklistHit(list_id=list_id, entry=digest)
        return None

    def check(self, key: PublicKey) -> BlocklistHit | None:
        return self.check_blob(encode_key_blob(key))

    @classmethod
    def bundled_samples(cls) -> "BlocklistSet":
        """The small sample lists shipped inside the package."""
        bl = cls()
        root = resources.files("keysweep").joinpath("data/blocklists")
        for entry in sorted(root.iterdir(), key=lambda e: e.name):
            if entry.name.endswith(".txt"):
                with resources.as_file(entry) as path:
                    bl.load_file(path)
        return bl


def blocklist_check(key: PublicKey, lists: BlocklistSet) -> BlocklistHit | None:
    return lists.check(key)
