"""Constructed-language experiment kit.

Builds reversible class-preserving substitution ciphers over real-language
text, assembles in-context language-learning prompts from lexicons,
exemplars, morphology, syntax and inflection material, runs them through an
LLM gateway (live, replay, or mock), deciphers the outputs, and scores
translations and downstream tasks.
"""

__version__ = "0.1.0"
