# -*- coding: utf-8 -*-
#
# rdi documentation build configuration file.

import os
import sys

import sphinx_bootstrap_theme

sys.path.insert(0, os.path.abspath('../'))

import rdi

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.viewcode',
    'sphinxcontrib.bibtex',
    'sphinx.ext.mathjax',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'numpydoc',
    'matplotlib.sphinxext.plot_directive'
]

bibtex_bibfiles = ['_static/references.bib']

templates_path = ['_templates']
source_suffix = ['.rst', '.md']
master_doc = 'index'

project = 'rdi'
copyright = '2026, rdi developers'
author = 'rdi developers'

version = rdi.__version__
release = rdi.__version__

language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store', 'tests/*']
pygments_style = 'sphinx'
todo_include_todos = False

# -- HTML ---------------------------------------------------------------------

html_theme = 'bootstrap'
html_theme_path = sphinx_bootstrap_theme.get_html_theme_path()
html_title = "%s v%s Manual" % (project, version)
html_static_path = ['_static']
htmlhelp_basename = 'rdidoc'

html_theme_options = {
    'navbar_title': "rdi",
    'navbar_sidebarrel': False,
    'nosidebar': True,
    'globaltoc_depth': 2,
    'globaltoc_includehidden': "true",
    'navbar_fixed_top': "true",
    'source_link_position': 'footer',
    'bootswatch_theme': "yeti",
    'bootstrap_version': "3",
    'navbar_links': [
        ("Installation", "installation"),
        ("API", "api"),
        ("References", "references"),
    ],
}

# -- LaTeX, man and texinfo ------------------------------------------------------

latex_documents = [
    (master_doc, 'rdi.tex', 'rdi Documentation', 'rdi developers', 'manual'),
]

man_pages = [(master_doc, 'rdi', 'rdi Documentation', [author], 1)]

texinfo_documents = [
    (master_doc, 'rdi', 'rdi Documentation', author, 'rdi',
     'Four-potentials that drive prescribed Dirac spinor evolutions.',
     'Miscellaneous'),
]

# -- autosummary / numpydoc ------------------------------------------------------

autosummary_generate = True
numpydoc_show_class_members = True
class_members_toctree = True
numpydoc_show_inherited_class_members = True
numpydoc_use_plots = True

plot_include_source = True

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
}
