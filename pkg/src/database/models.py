"""
Database models for census bookkeeping.
"""
from datetime import datetime

from sqlalchemy import Column, DateTime, Float, Index, Integer, String, Text
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class CensusRun(Base):
    """One completed census"""
    __tablename__ = 'census_runs'

    id = Column(Integer, primary_key=True)
    run_key = Column(String(120), index=True)
    n = Column(Integer)
    mode = Column(String(20))
    polynomial = Column(String(10))
    edge_counts = Column(String(255))  # comma separated strata, empty for a full census
    classes = Column(Integer)          # H
    distinct_polynomials = Column(Integer)  # B
    unique_classes = Column(Integer)   # U
    seconds = Column(Float)
    created = Column(DateTime, default=datetime.utcnow)


class CensusShard(Base):
    """Track which edge-count strata of a run have been computed and where their records live"""
    __tablename__ = 'census_shards'

    id = Column(Integer, primary_key=True)
    run_key = Column(String(120), index=True)
    stratum = Column(Integer)
    status = Column(String(20), default='pending')  # pending, in_progress, completed, failed
    checkpoint_offset = Column(Integer, default=0)  # in records, not bytes
    record_count = Column(Integer, default=0)
    started = Column(DateTime)
    completed = Column(DateTime)
    last_updated = Column(DateTime, default=datetime.utcnow)
    error_message = Column(Text)


Index('idx_census_shards_run_stratum', CensusShard.run_key, CensusShard.stratum, unique=True)
