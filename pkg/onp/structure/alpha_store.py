"""On-disk store of solved alpha_u records, in the tables JSON format."""
import logging
import os
import threading
from typing import Dict, Optional

from pydantic import ValidationError

from onp.arithmetic.context import Context
from onp.core.errors import MalformedInputError
from onp.models.schemas import TableRow, TablesDocument
from onp.ordinals.element import element_to_ordinal, ordinal_to_element
from onp.ordinals.notation import ORDINAL, STYLE_CNF, STYLE_P_EXPANSION, format_ordinal, parse
from onp.structure.alpha import AlphaRecord, record_matches_scan, verify_alpha_minimality

logger = logging.getLogger(__name__)

_lock = threading.Lock()


def record_to_row(record: AlphaRecord, ctx: Context) -> TableRow:
    alpha = element_to_ordinal(record.alpha, ctx)
    return TableRow(
        u=record.u,
        f=record.f,
        Q=list(record.Q),
        excess=record.excess,
        alpha_cnf=format_ordinal(alpha, STYLE_CNF),
        alpha_p=format_ordinal(alpha, STYLE_P_EXPANSION),
    )


def row_to_record(row: TableRow, ctx: Context) -> AlphaRecord:
    alpha = ordinal_to_element(parse(row.alpha_p, ctx, mode=ORDINAL), ctx)
    return AlphaRecord(u=row.u, f=row.f, Q=tuple(row.Q), excess=row.excess, alpha=alpha)


def load_document(path: str) -> Optional[TablesDocument]:
    """Read a tables document, or None if the file does not exist."""
    with _lock:
        if not os.path.exists(path):
            return None
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    try:
        return TablesDocument.model_validate_json(raw)
    except ValidationError as e:
        raise MalformedInputError(f"invalid alpha cache {path}: {e}") from e


def save_document(path: str, document: TablesDocument) -> None:
    tmp = f"{path}.tmp"
    with _lock:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(document.model_dump_json(indent=2))
        os.replace(tmp, path)


def load_into_context(path: str, ctx: Context, verify: Optional[bool] = None) -> int:
    """Seed ctx.alpha_cache from `path`; returns the number of records loaded.

    Rows stored for a different p are ignored. Every row must match its scan
    start (f, Q and the excess); with `verify` (default
    settings.verify_alpha_cache) the power tests behind each row are re-run.

    Raises:
        MalformedInputError: A row does not hold for this p.
    """
    verify = ctx.settings.verify_alpha_cache if verify is None else verify
    document = load_document(path)
    if document is None:
        return 0
    if document.p != ctx.p:
        logger.warning(f"alpha cache {path} is for p={document.p}, context has p={ctx.p}; ignoring")
        return 0
    for row in document.rows:
        record = row_to_record(row, ctx)
        if not record_matches_scan(record, ctx):
            raise MalformedInputError(f"alpha cache {path}: row u={row.u} does not match its scan for p={ctx.p}")
        if verify and not verify_alpha_minimality(record, ctx):
            raise MalformedInputError(f"alpha cache {path}: alpha_{row.u} is not the least non-{row.u}th power")
        ctx.remember(ctx.alpha_cache, row.u, record)
    logger.info(f"Loaded {len(document.rows)} alpha records from {path}")
    return len(document.rows)


def save_from_context(path: str, ctx: Context) -> int:
    """Merge ctx.alpha_cache into the document at `path`, sorted by u."""
    existing = load_document(path)
    rows: Dict[int, TableRow] = {}
    if existing is not None and existing.p == ctx.p:
        rows.update({row.u: row for row in existing.rows})
    for u, record in sorted(ctx.alpha_cache.items()):
        rows[u] = record_to_row(record, ctx)
    save_document(path, TablesDocument(p=ctx.p, rows=[rows[u] for u in sorted(rows)]))
    logger.info(f"Saved {len(rows)} alpha records to {path}")
    return len(rows)


class AlphaStore:
    """Thin wrapper for alpha_store functions."""
    load = staticmethod(load_into_context)
    save = staticmethod(save_from_context)
    load_document = staticmethod(load_document)
    save_document = staticmethod(save_document)


alpha_store = AlphaStore()
