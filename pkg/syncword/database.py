"""
Database configuration and session management for the enumeration checkpoint store.
Handles SQLAlchemy setup and session lifetimes.
"""

import os
from contextlib import contextmanager
from typing import Iterator

from dotenv import load_dotenv
from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

load_dotenv()

DATABASE_URL = os.getenv("SYNCWORD_DATABASE_URL", "sqlite:///./syncword_checkpoints.db")

Base = declarative_base()


def make_engine(url: str = DATABASE_URL) -> Engine:
    return create_engine(
        url,
        connect_args={"check_same_thread": False} if url.startswith("sqlite") else {}
    )


def make_session_factory(url: str = DATABASE_URL) -> sessionmaker:
    """
    Create the schema if needed and return a session factory bound to url.
    The engine is created lazily so that importing syncword never touches the disk.
    """
    import syncword.models  # noqa: F401  registers the tables on Base

    engine = make_engine(url)
    Base.metadata.create_all(bind=engine)
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)


@contextmanager
def get_db(url: str = DATABASE_URL) -> Iterator[Session]:
    """
    Yields a database session and ensures it's closed after use.
    """
    db = make_session_factory(url)()
    try:
        yield db
    finally:
        db.close()
