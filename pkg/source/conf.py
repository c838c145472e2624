import os
import sys
import re

sys.path.insert(0, os.path.abspath('..'))


project = 'edgeweave'
copyright = '2021, WardPearce'
author = 'WardPearce'

with open('../edgeweave/__init__.py') as f:
    version = re.search(
        r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', f.read(), re.MULTILINE
    ).group(1)

release = version

# trio marks the Awaiting session's coroutines in autodoc output
extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinxcontrib_trio'
]

napoleon_google_docstring = False

master_doc = 'index'

html_theme = 'sphinx_material'
html_sidebars = {
    "**": ["globaltoc.html", "localtoc.html", "searchbox.html"]
}
html_theme_options = {
    'nav_title': 'edgeweave',
    'color_primary': 'blue',
    'color_accent': 'light-blue',
    'globaltoc_depth': 2,
}
