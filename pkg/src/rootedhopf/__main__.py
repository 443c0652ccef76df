from rootedhopf.cli import entry

entry()
