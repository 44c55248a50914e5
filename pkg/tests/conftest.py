from yangrep.classify import FactoredSeries
from yangrep.exactlin import ONE, ZERO, rat
from yangrep.repanalysis import extract_hw


def unit(x, idx=None):
    idx = x.hw_index if idx is None else idx
    return tuple(ONE if i == idx else ZERO for i in range(x.dim))


def hw_of(x, v=None):
    return extract_hw(x, unit(x) if v is None else v).components


def series(*pairs):
    """series((c, e), ...) = prod (1 + c u^-1)^e as a rational function."""
    return FactoredSeries([(rat(c), e) for c, e in pairs]).ratfunc()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
