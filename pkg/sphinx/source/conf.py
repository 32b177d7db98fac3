# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project   = 'psrestore'
copyright = '2024, psrestore developers'
author    = 'psrestore developers'
release   = 'psrestore-v0.3.1'

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath("../../src"))
sys.path.insert(0, os.path.abspath("."))

# -- General configuration ---------------------------------------------------

extensions  = ['sphinx.ext.autosectionlabel']
extensions += ["sphinx.ext.autodoc"]
extensions += ["sphinx.ext.mathjax"]

templates_path = ['_templates']
exclude_patterns = []

autosectionlabel_prefix_document = True
autosectionlabel_maxdepth = 6

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']

rst_prolog = """
.. |Application|  replace:: **psrestore**
.. |PackageName|  replace:: **psrestore**
"""

html_last_updated_fmt = '%b %d, %Y'
