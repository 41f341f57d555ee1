"""Character-level script purity scoring for Traditional Chinese output.

Thin wrapper around the compiled _tcpurity extension.
"""

try:
    from ._tcpurity import (  # type: ignore[attr-defined]
        CharClass,
        CharVerdict,
        FamilyStats,
        NormalizedText,
        PurityScore,
        ScriptPolicy,
        classify,
        macro_micro,
        normalize,
        score,
    )
except ImportError:
    # Build-tree layout: the extension sits next to the package.
    from _tcpurity import (  # type: ignore[no-redef]
        CharClass,
        CharVerdict,
        FamilyStats,
        NormalizedText,
        PurityScore,
        ScriptPolicy,
        classify,
        macro_micro,
        normalize,
        score,
    )

__all__ = [
    "CharClass",
    "CharVerdict",
    "FamilyStats",
    "NormalizedText",
    "PurityScore",
    "ScriptPolicy",
    "classify",
    "macro_micro",
    "normalize",
    "score",
]
