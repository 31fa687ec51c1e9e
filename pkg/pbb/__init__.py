"""The pbb project.

Exact-rational semantics for a two-sorted probabilistic process calculus: a parser and printer for
non-deterministic and probabilistic terms, combined and weak transitions over transition-closed universes,
strong and branching probabilistic bisimilarity certificates, a stabilizer for inert internal activity, a
cancellation verifier and a property-test harness for the algebraic facts they rely on.
"""
