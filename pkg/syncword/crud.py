"""
Checkpoint store operations for sharded enumerations.
Records runs and finished shard reports so an interrupted enumeration can resume.
"""

import hashlib
import logging
from typing import Dict, Optional

from sqlalchemy.orm import Session

from syncword.models import EnumerationRun, ShardCheckpoint
from syncword.schemas import EnumerationReport, SearchSpec

logger = logging.getLogger(__name__)


def run_key(spec: SearchSpec, shard_count: int) -> str:
    """SHA-256 of the spec echo and the shard count."""
    payload = f"{spec.model_dump_json()}|{shard_count}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def get_run(db: Session, spec: SearchSpec, shard_count: int) -> Optional[EnumerationRun]:
    """
    Retrieve the run for a spec and shard count.

    Args:
        db: Database session
        spec: Search spec of the run
        shard_count: Number of shards the run is split into

    Returns:
        EnumerationRun object or None if the run was never started
    """
    try:
        return db.query(EnumerationRun).filter(
            EnumerationRun.run_key == run_key(spec, shard_count)
        ).first()
    except Exception as e:
        logger.error(f"Error retrieving run for n={spec.n} q={spec.q}: {str(e)}")
        raise


def get_or_create_run(db: Session, spec: SearchSpec, shard_count: int) -> EnumerationRun:
    try:
        run = get_run(db, spec, shard_count)
        if run is not None:
            logger.info(f"Resuming run {run.run_key[:12]} with {len(run.checkpoints)} finished shards")
            return run

        run = EnumerationRun(
            run_key=run_key(spec, shard_count),
            spec_json=spec.model_dump_json(),
            shard_count=shard_count,
        )
        db.add(run)
        db.commit()
        db.refresh(run)

        logger.info(f"Created run {run.run_key[:12]} for n={spec.n} q={spec.q} in {shard_count} shards")
        return run
    except Exception as e:
        db.rollback()
        logger.error(f"Error creating run: {str(e)}")
        raise


def completed_shards(db: Session, run: EnumerationRun) -> Dict[int, EnumerationReport]:
    """
    Load every finished shard of a run.

    Args:
        db: Database session
        run: The enumeration run

    Returns:
        Shard reports keyed by shard index
    """
    try:
        checkpoints = db.query(ShardCheckpoint).filter(
            ShardCheckpoint.run_id == run.id
        ).order_by(ShardCheckpoint.shard_index).all()
        return {c.shard_index: EnumerationReport.model_validate_json(c.report_json) for c in checkpoints}
    except Exception as e:
        logger.error(f"Error loading shards of run {run.id}: {str(e)}")
        raise


def save_shard(db: Session, run: EnumerationRun, shard_index: int, report: EnumerationReport) -> ShardCheckpoint:
    """
    Store the report of a finished shard.

    Raises:
        ValueError: If the shard index is out of range or already stored
    """
    try:
        if not 0 <= shard_index < run.shard_count:
            raise ValueError(f"Shard {shard_index} is not in [0, {run.shard_count})")

        existing = db.query(ShardCheckpoint).filter(
            ShardCheckpoint.run_id == run.id,
            ShardCheckpoint.shard_index == shard_index
        ).first()
        if existing:
            logger.warning(f"Shard {shard_index} of run {run.id} is already stored")
            raise ValueError(f"Shard {shard_index} is already stored")

        checkpoint = ShardCheckpoint(
            run_id=run.id,
            shard_index=shard_index,
            report_json=report.model_dump_json(),
        )
        db.add(checkpoint)
        db.commit()
        db.refresh(checkpoint)

        logger.info(f"Stored shard {shard_index} of run {run.id}")
        return checkpoint
    except ValueError:
        db.rollback()
        raise
    except Exception as e:
        db.rollback()
        logger.error(f"Error storing shard {shard_index}: {str(e)}")
        raise


def delete_run(db: Session, spec: SearchSpec, shard_count: int) -> bool:
    """Drop a run and its checkpoints; returns False when there was none."""
    try:
        run = get_run(db, spec, shard_count)
        if run is None:
            return False
        db.delete(run)
        db.commit()
        logger.info(f"Deleted run for n={spec.n} q={spec.q}")
        return True
    except Exception as e:
        db.rollback()
        logger.error(f"Error deleting run: {str(e)}")
        raise
