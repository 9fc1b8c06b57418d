import os
from pathlib import Path

from sepal_ui.translator import Translator

# every log line, error and help text of ccaqed is read from the locale json
# files next to this module, english keys fill the gaps of other languages
lang = os.environ.get("CUSTOM_LANGUAGE", "en")

cm = Translator(Path(__file__).parent, lang)
