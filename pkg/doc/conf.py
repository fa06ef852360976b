# Sphinx configuration for the nil2 documentation.
import os
import sys
sys.path.insert(0, os.path.abspath('..'))

project = u'nil2'
copyright = u'2026, nil2 developers'
author = u'nil2 developers'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
]

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = [u'_build']

pygments_style = 'sphinx'
html_theme = 'alabaster'
