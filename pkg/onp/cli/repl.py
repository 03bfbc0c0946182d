"""Line-oriented evaluator."""
import logging
import sys
from typing import Callable, List, Optional, TextIO

from onp.arithmetic.context import Context
from onp.core.errors import ExpressionSyntaxError, OnpError
from onp.ordinals.element import element_to_ordinal
from onp.ordinals.notation import STYLE_CNF, STYLE_P_EXPANSION, evaluate, format_ordinal

try:
    import readline  # noqa: F401  line editing for input()
except ImportError:
    pass

logger = logging.getLogger(__name__)

HELP = """\
Enter an expression to evaluate it in On_p, e.g. 22+19 or [w^w]^5.
  :p <prime>        switch characteristic
  :style cnf|p      output style (Cantor normal form or base-p expansion)
  :help             this message
  :quit             leave"""

QUIT = object()


class ReplSession:
    """State of one interactive session: the current Context and output style."""

    def __init__(self, context_factory: Callable[[int], Context], p: int, style: str = STYLE_CNF):
        self.context_factory = context_factory
        self.ctx = context_factory(p)
        self.style = style

    @property
    def prompt(self) -> str:
        return f"On_{self.ctx.p}> "

    def handle(self, line: str):
        """Process one line; returns the text to print, None, or QUIT."""
        line = line.strip()
        if not line:
            return None
        if line.startswith(":"):
            return self._command(line[1:].split())
        try:
            value = element_to_ordinal(evaluate(line, self.ctx), self.ctx)
            return format_ordinal(value, self.style)
        except ExpressionSyntaxError as e:
            return e.describe()
        except OnpError as e:
            logger.debug(f"evaluation failed: {line}", exc_info=True)
            return f"error: {e.message}"

    def _command(self, words: List[str]) -> object:
        if not words:
            return HELP
        name, args = words[0], words[1:]
        if name in ("q", "quit", "exit"):
            return QUIT
        if name == "help":
            return HELP
        if name == "p" and len(args) == 1 and args[0].isdigit():
            try:
                self.ctx = self.context_factory(int(args[0]))
            except OnpError as e:
                return f"error: {e.message}"
            return f"p = {self.ctx.p}"
        if name == "style" and len(args) == 1 and args[0] in (STYLE_CNF, "p", STYLE_P_EXPANSION):
            self.style = STYLE_CNF if args[0] == STYLE_CNF else STYLE_P_EXPANSION
            return f"style = {self.style}"
        return f"unknown command :{' '.join(words)} (try :help)"

    def run(self, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
        """Read lines until EOF or :quit. With `stdin` given, no prompt is shown."""
        out = stdout or sys.stdout
        while True:
            try:
                if stdin is None:
                    line = input(self.prompt)
                else:
                    line = stdin.readline()
                    if not line:
                        break
            except (EOFError, KeyboardInterrupt):
                print(file=out)
                break
            result = self.handle(line)
            if result is QUIT:
                break
            if result is not None:
                print(result, file=out)
        return 0
