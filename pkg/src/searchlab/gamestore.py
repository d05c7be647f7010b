"""Append-only persistence of game and machine traces.

One game = the set of records sharing (user_id, game_end_timestamp); each
record is a single click. The interchange format is line-delimited UTF-8
text, one record per line, LF endings, fields in a fixed order as
``key=value`` pairs:

    user_id=... function_id=... mode=... game_end_timestamp=... \
    click_index=... x1=... x2=... score=...

Coordinates and scores are written with 9 significant digits, and every
value is canonicalized to that precision *on append*, so in-memory state,
the on-disk log, and export/import round trips agree exactly. Files carry
no header line; blank lines and '#' comments are ignored on import. The
conventional extension is ``.gtr``.

Machine traces reuse the same shape with
``user_id = "machine:<surrogate>:<acquisition>:<seed>"``.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator, Union

import numpy as np

from .boloop import Observation, Trace, TraceMeta
from .errors import ConflictError, NotFoundError, ParseError, ValidationError
from .testfns import N_FUNCTIONS

FIELDS = ("user_id", "function_id", "mode", "game_end_timestamp", "click_index", "x1", "x2", "score")
FILE_EXTENSION = ".gtr"


def canonical9(x: float) -> float:
    """Round-trip a float through the 9-significant-digit wire precision."""
    return float(f"{float(x):.9g}")


@dataclass(frozen=True)
class GameRecord:
    user_id: str
    function_id: int
    mode: int
    game_end_timestamp: int  # UTC milliseconds; identifies the game
    click_index: int  # 1-based, dense within a game
    x1: float
    x2: float
    score: float

    def __post_init__(self):
        if not self.user_id or any(c.isspace() for c in self.user_id):
            raise ValidationError(f"user_id must be non-empty without whitespace, got {self.user_id!r}")
        if not 0 <= self.function_id < N_FUNCTIONS:
            raise ValidationError(f"function_id out of range: {self.function_id}")
        if self.mode not in (1, 2, 3):
            raise ValidationError(f"mode must be 1, 2 or 3, got {self.mode}")
        if self.game_end_timestamp < 0:
            raise ValidationError(f"game_end_timestamp must be nonnegative, got {self.game_end_timestamp}")
        if self.click_index < 1:
            raise ValidationError(f"click_index must be >= 1, got {self.click_index}")
        if not (0.0 <= self.x1 <= 1.0 and 0.0 <= self.x2 <= 1.0):
            raise ValidationError(f"coordinates must lie in [0,1]^2, got ({self.x1}, {self.x2})")
        if not 0.0 <= self.score <= 100.0:
            raise ValidationError(f"score must lie in [0,100], got {self.score}")

    def canonical(self) -> "GameRecord":
        return replace(self, x1=canonical9(self.x1), x2=canonical9(self.x2), score=canonical9(self.score))


def format_record(r: GameRecord) -> str:
    return (
        f"user_id={r.user_id} function_id={r.function_id} mode={r.mode} "
        f"game_end_timestamp={r.game_end_timestamp} click_index={r.click_index} "
        f"x1={r.x1:.9g} x2={r.x2:.9g} score={r.score:.9g}"
    )


def parse_record(line: str, line_no: int | None = None) -> GameRecord:
    tokens = line.split()
    if len(tokens) != len(FIELDS):
        raise ParseError(f"expected {len(FIELDS)} fields, got {len(tokens)}", line_no)
    values = {}
    for token, expected in zip(tokens, FIELDS):
        key, sep, value = token.partition("=")
        if not sep or key != expected:
            raise ParseError(f"expected field {expected!r}, got {token!r}", line_no)
        values[key] = value
    try:
        return GameRecord(
            user_id=values["user_id"],
            function_id=int(values["function_id"]),
            mode=int(values["mode"]),
            game_end_timestamp=int(values["game_end_timestamp"]),
            click_index=int(values["click_index"]),
            x1=float(values["x1"]),
            x2=float(values["x2"]),
            score=float(values["score"]),
        )
    except (ValueError, ValidationError) as exc:
        raise ParseError(str(exc), line_no) from exc


class GameStore:
    """Single-writer, multi-reader record log, optionally file-backed."""

    def __init__(self, path: Union[str, Path, None] = None):
        self._path = Path(path) if path is not None else None
        self._games: dict[tuple[str, int], list[GameRecord]] = {}
        if self._path is not None and self._path.exists():
            with open(self._path, encoding="utf-8") as fh:
                self._ingest(fh, persist=False)

    def __len__(self) -> int:
        return sum(len(g) for g in self._games.values())

    def append_record(self, r: GameRecord) -> None:
        """Validate against the store and append (durably when file-backed)."""
        r = r.canonical()
        key = (r.user_id, r.game_end_timestamp)
        game = self._games.setdefault(key, [])
        if r.click_index <= len(game):
            raise ConflictError(
                f"record ({r.user_id}, {r.game_end_timestamp}, {r.click_index}) already exists"
            )
        if r.click_index != len(game) + 1:
            raise ValidationError(
                f"click_index must be dense: expected {len(game) + 1}, got {r.click_index}"
            )
        game.append(r)
        if self._path is not None:
            with open(self._path, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(format_record(r) + "\n")
                fh.flush()
                os.fsync(fh.fileno())

    def append_trace(self, t: Trace) -> int:
        """Store a whole trace as one game; returns the record count."""
        meta = t.meta
        if meta.user_id is None or meta.end_timestamp is None:
            raise ValidationError("trace meta must carry user_id and end_timestamp to be stored")
        for obs in t.observations:
            self.append_record(
                GameRecord(
                    user_id=meta.user_id,
                    function_id=meta.function_id,
                    mode=meta.mode,
                    game_end_timestamp=meta.end_timestamp,
                    click_index=obs.index,
                    x1=float(obs.x[0]),
                    x2=float(obs.x[1]),
                    score=float(obs.y),
                )
            )
        return len(t.observations)

    def list_games(self) -> list[tuple[str, int]]:
        return sorted(self._games.keys())

    def load_trace(self, user_id: str, game_end_timestamp: int) -> Trace:
        """Rebuild a Trace (metadata included) from one game's records."""
        key = (user_id, int(game_end_timestamp))
        if key not in self._games:
            raise NotFoundError(f"no game ({user_id}, {game_end_timestamp})")
        records = sorted(self._games[key], key=lambda r: r.click_index)
        first = records[0]
        meta = _meta_from_user_id(user_id, first.function_id, first.mode, len(records), game_end_timestamp)
        obs = tuple(
            Observation(x=np.array([r.x1, r.x2]), y=r.score, index=r.click_index) for r in records
        )
        return Trace(observations=obs, meta=meta)

    def load_all_traces(self) -> list[Trace]:
        return [self.load_trace(uid, ts) for uid, ts in self.list_games()]

    def export_all(self) -> str:
        """Canonically ordered dump; empty store exports an empty stream."""
        lines = []
        for key in self.list_games():
            for r in sorted(self._games[key], key=lambda r: r.click_index):
                lines.append(format_record(r) + "\n")
        return "".join(lines)

    def import_all(self, stream: Union[str, Iterable[str]]) -> int:
        """Validate and append every record in the stream; returns the count."""
        if isinstance(stream, str):
            stream = io.StringIO(stream)
        return self._ingest(stream, persist=True)

    def _ingest(self, lines: Iterator[str], persist: bool) -> int:
        count = 0
        for line_no, line in enumerate(lines, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            record = parse_record(stripped, line_no)
            if persist:
                self.append_record(record)
            else:
                self._append_loaded(record, line_no)
            count += 1
        return count

    def _append_loaded(self, r: GameRecord, line_no: int) -> None:
        # loading our own log: enforce invariants but do not rewrite the file
        key = (r.user_id, r.game_end_timestamp)
        game = self._games.setdefault(key, [])
        if r.click_index != len(game) + 1:
            raise ParseError(
                f"click_index {r.click_index} breaks density for game {key}", line_no
            )
        game.append(r)


def _meta_from_user_id(user_id: str, function_id: int, mode: int, n: int, ts: int) -> TraceMeta:
    if user_id.startswith("machine:"):
        parts = user_id.split(":")
        surrogate = parts[1] if len(parts) > 1 else None
        acquisition = parts[2] if len(parts) > 2 else None
        try:
            seed = int(parts[3]) if len(parts) > 3 else None
        except ValueError:
            seed = None
        return TraceMeta(
            source="machine",
            function_id=function_id,
            mode=mode,
            budget=n,
            surrogate=surrogate or None,
            acquisition=acquisition or None,
            seed=seed,
            user_id=user_id,
            end_timestamp=ts,
        )
    return TraceMeta(
        source="human",
        function_id=function_id,
        mode=mode,
        budget=n,
        user_id=user_id,
        end_timestamp=ts,
    )
