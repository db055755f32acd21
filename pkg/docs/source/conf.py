# -*- coding: utf-8 -*-
#
# Sphinx configuration for the turbdiff API reference.

import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

from turbdiff import __version__  # pylint: disable=wrong-import-position

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              'sphinx.ext.viewcode']

source_suffix = '.rst'
master_doc = 'index'

project = 'turbdiff'
copyright = '2024, turbdiff contributors'  # pylint: disable=redefined-builtin
author = 'turbdiff contributors'

version = '.'.join(__version__.split('.')[:2])
release = __version__

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'turbdiffdoc'

# class docstring and __init__ docstring together
autoclass_content = 'both'
