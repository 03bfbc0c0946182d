"""alpha_u table generation."""
import logging
from typing import List, Optional

from sympy import primerange

from onp.arithmetic.context import Context
from onp.models.schemas import TableRow, TablesDocument
from onp.structure.alpha import alpha_u
from onp.structure.alpha_store import alpha_store, record_to_row

logger = logging.getLogger(__name__)

HEADER = ("u", "f(u)", "Q(f(u))", "excess", "alpha_u", "alpha_u (CNF)")


class TableService:
    """Builds one TableRow per prime u <= u_max, u != p."""

    def __init__(self, ctx: Context, store_path: Optional[str] = None):
        """Initialize table service.

        Args:
            ctx: Field context.
            store_path: Optional alpha cache file; loaded before and merged after a run.
        """
        self.ctx = ctx
        self.store_path = store_path or ctx.settings.alpha_cache_path
        if self.store_path:
            alpha_store.load(self.store_path, ctx)

    def rows(self, u_max: int) -> List[TableRow]:
        rows = []
        for u in primerange(2, u_max + 1):
            if u == self.ctx.p:
                continue
            rows.append(record_to_row(alpha_u(int(u), self.ctx), self.ctx))
        if self.store_path:
            alpha_store.save(self.store_path, self.ctx)
        return rows

    def document(self, u_max: int) -> TablesDocument:
        return TablesDocument(p=self.ctx.p, rows=self.rows(u_max))


def format_q(q: List[int]) -> str:
    return "{" + ",".join(str(r) for r in q) + "}" if q else "{}"


def render_text(document: TablesDocument) -> str:
    """Fixed-width text table, one line per row."""
    lines = [HEADER] + [
        (str(r.u), str(r.f), format_q(r.Q), str(r.excess), r.alpha_p, r.alpha_cnf) for r in document.rows
    ]
    widths = [max(len(line[i]) for line in lines) for i in range(len(HEADER))]
    out = [f"alpha_u in On_{document.p}"]
    for line in lines:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    return "\n".join(out)
