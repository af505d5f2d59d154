"""Computational workbench for the New-Stein Lie algebra and group.

Subpackages cover the exact structure-constant engine (:mod:`.liealg`),
the concrete algebra constructors (:mod:`.algebras`), Chevalley-Eilenberg
cohomology (:mod:`.cohomology`), the extension calculus (:mod:`.extensions`),
the group law and its sections (:mod:`.grouplaw`), and the induced oscillator
representation (:mod:`.oscillator`).
"""

__version__ = "0.1.0"
