from importlib.metadata import version as get_version

# Project --------------------------------------------------------------

project = "charsum"
copyright = "2024 charsum contributors"
author = "charsum contributors"
release = get_version("charsum")
version = ".".join(release.split(".")[:2])

# General --------------------------------------------------------------

master_doc = "index"
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
]
autoclass_content = "both"
autodoc_typehints = "description"
intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "mpmath": ("https://mpmath.org/doc/current/", None),
}

# HTML -----------------------------------------------------------------

html_theme = "alabaster"
html_title = f"charsum Documentation ({version})"
html_show_sourcelink = False

# LaTeX ----------------------------------------------------------------

latex_documents = [
    (master_doc, f"charsum-{version}.tex", html_title, author, "manual")
]
