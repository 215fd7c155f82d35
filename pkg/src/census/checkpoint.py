"""
Append-only census checkpoint files.

Each record is a pair of little-endian unsigned 64-bit integers:
(canonical-form digest, polynomial fingerprint digest), one per isomorphism
class. Shards append their records in one write; the database row of a shard
stores the record offset and count, so records of shards that never completed
are never read back.
"""
import hashlib
import logging
import os
import re
from pathlib import Path
from typing import Dict, Iterable, Tuple, Union

import numpy as np

from ..database.db_manager import DatabaseManager
from ..polynomials.graph_polynomial import GraphPolynomial

logger = logging.getLogger(__name__)

RECORD_DTYPE = np.dtype([('canonical', '<u8'), ('fingerprint', '<u8')])


def fingerprint_digest(p: GraphPolynomial) -> int:
    """64-bit BLAKE2b digest of the exact monomial coefficient vector"""
    h = hashlib.blake2b(digest_size=8)
    h.update(",".join(str(c) for c in p.monomial_coeffs()).encode("ascii"))
    return int.from_bytes(h.digest(), "little")


def run_file_name(run_key: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", run_key) + ".ckpt"


class CensusCheckpoint:
    """One checkpoint file per census run key"""

    def __init__(self, directory: Union[str, Path], run_key: str):
        self.run_key = run_key
        self.path = Path(directory) / run_file_name(run_key)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def record_count(self) -> int:
        if not self.path.exists():
            return 0
        return os.path.getsize(self.path) // RECORD_DTYPE.itemsize

    def append(self, records: np.ndarray) -> Tuple[int, int]:
        """
        Append records; returns (offset, count) in records.
        A torn tail from an interrupted write is cut off first.
        """
        records = np.asarray(records, dtype=RECORD_DTYPE)
        offset = self.record_count()
        with open(self.path, 'ab') as handle:
            handle.truncate(offset * RECORD_DTYPE.itemsize)
            handle.write(records.tobytes())
            handle.flush()
            os.fsync(handle.fileno())
        logger.debug(f"Checkpoint {self.path.name}: {len(records)} records at offset {offset}")
        return offset, len(records)

    def read(self, offset: int, count: int) -> np.ndarray:
        if count == 0:
            return np.zeros(0, dtype=RECORD_DTYPE)
        records = np.fromfile(self.path, dtype=RECORD_DTYPE, count=count,
                              offset=offset * RECORD_DTYPE.itemsize)
        if len(records) != count:
            raise OSError(f"checkpoint {self.path} holds {len(records)} of {count} records at offset {offset}")
        return records

    def remove(self):
        if self.path.exists():
            self.path.unlink()


def make_records(pairs) -> np.ndarray:
    """Structured record array from (canonical, fingerprint) integer pairs"""
    return np.array(list(pairs), dtype=RECORD_DTYPE)


class ShardLedger:
    """A run's checkpoint file together with the census_shards rows indexing it"""

    def __init__(self, directory: Union[str, Path], run_key: str, db: DatabaseManager):
        self.run_key = run_key
        self.file = CensusCheckpoint(directory, run_key)
        self.db = db

    def completed(self) -> Dict[int, np.ndarray]:
        """Records of every completed shard, keyed by stratum; empty if the file went missing"""
        shards = self.db.get_completed_shards(self.run_key)
        records = {}
        try:
            for stratum, (offset, count) in sorted(shards.items()):
                records[stratum] = self.file.read(offset, count)
        except (OSError, ValueError) as e:
            logger.warning(f"Checkpoint for {self.run_key} unusable ({e}); starting over")
            self.db.clear_run(self.run_key)
            self.file.remove()
            return {}
        if records:
            logger.info(f"Resuming {self.run_key}: {len(records)} strata already completed")
        return records

    def start(self, strata: Iterable[int]):
        for stratum in strata:
            self.db.set_shard_status(self.run_key, stratum, 'in_progress')

    def commit(self, stratum: int, records: np.ndarray):
        offset, count = self.file.append(records)
        self.db.set_shard_status(self.run_key, stratum, 'completed',
                                 checkpoint_offset=offset, record_count=count)

    def abort(self, message: str):
        failed = self.db.fail_in_progress(self.run_key, message)
        if failed:
            logger.warning(f"Marked {failed} unfinished strata of {self.run_key} as failed")
