"""
SQLAlchemy models for the enumeration checkpoint store.
A run is one (search spec, shard count) pair; each finished shard stores its report.
"""

from datetime import datetime

from sqlalchemy import Column, DateTime, ForeignKey, Integer, String, Text, UniqueConstraint
from sqlalchemy.orm import relationship

from syncword.database import Base


class EnumerationRun(Base):
    """
    Model representing one sharded enumeration.
    run_key identifies the spec and shard count, so reruns find their shards.
    """
    __tablename__ = "enumeration_runs"

    id = Column(Integer, primary_key=True, index=True)
    run_key = Column(String(64), nullable=False, unique=True, index=True)
    spec_json = Column(Text, nullable=False)
    shard_count = Column(Integer, nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow)

    checkpoints = relationship("ShardCheckpoint", back_populates="run", cascade="all, delete-orphan")

    def __repr__(self):
        return f"<EnumerationRun(run_key='{self.run_key[:12]}', shard_count={self.shard_count})>"


class ShardCheckpoint(Base):
    """Model representing the finished report of one shard."""
    __tablename__ = "shard_checkpoints"
    __table_args__ = (UniqueConstraint("run_id", "shard_index"),)

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("enumeration_runs.id"), nullable=False)
    shard_index = Column(Integer, nullable=False)
    report_json = Column(Text, nullable=False)
    completed_at = Column(DateTime, default=datetime.utcnow)

    run = relationship("EnumerationRun", back_populates="checkpoints")

    def __repr__(self):
        return f"<ShardCheckpoint(run_id={self.run_id}, shard_index={self.shard_index})>"
