"""
Information pertaining to this project's version, name, description,
author and licensing
"""

__title__ = "usdcoherence"
__description__ = "Optimal unambiguous state discrimination failure probabilities and the coherence of superposed states."
__version__ = "1.0.0"
__author__ = "usdcoherence developers"
__license__ = "MIT"
