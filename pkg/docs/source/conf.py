# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))

from recommonmark.transform import AutoStructify  # noqa: E402

# -- Project information -----------------------------------------------------

project = "blockavgpy"
copyright = "2024, BlockAvgPy Development Team"
author = "BlockAvgPy Development Team"


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.imgmath",
    "sphinx.ext.napoleon",
    "sphinx.ext.todo",
    "sphinx_autodoc_typehints",
    "recommonmark",
    "sphinx_markdown_tables",
    "sphinx_rtd_theme",
]

templates_path = ["_templates"]

# -- Extensions Configuration -------------------------------------------------

# :: napoleon
napoleon_use_param = True

# :: sphinx_autodoc_typehints
set_type_checking_flag = False

# :: sphinx.ext.imgmath
imgmath_image_format = "svg"
imgmath_font_size = 14
imgmath_use_preview = True
imgmath_latex_preamble = r"""
\usepackage{amsmath}
\usepackage{amssymb}
\usepackage{lmodern}
\usepackage[T1]{fontenc}

% :: Distances ::
\newcommand{\dtv}{\ensuremath{d_\mathrm{TV}}}
\newcommand{\tent}{\ensuremath{t_\mathrm{ent}}}
\newcommand{\trel}{\ensuremath{t_\mathrm{rel}}}
"""

exclude_patterns = []

source_suffix = {".rst": "restructuredtext", ".md": "markdown"}


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]


def setup(app) -> None:
    app.add_config_value(
        "recommonmark_config",
        {
            "enable_math": True,
            "enable_inline_math": True,
            "enable_eval_rst": False,
            "enable_auto_doc_ref": False,
            "auto_toc_tree_section": None,
            "enable_auto_toc_tree": False,
            "url_resolver": lambda x: x,
        },
        True,
    )
    app.add_transform(AutoStructify)
