"""
Scenario files
==============

The command line tool runs scenario files: point and ideal declarations
followed by tasks with optional expectations. The same machinery is
available as a library.
"""

from seplab import parse_scenario, render_scenario
from seplab.cli import run_scenario

TEXT = """\
point alpha = branch { x = "t^2", y = "t^4 + 2*t^5" }
point beta = branch { x = "t^2", y = "t^4 - t^5" }
point alpha' = lift alpha
point beta' = lift beta along alpha
ideal S = ["y - x^2", "x*y"]

sep alpha beta expect gamma_alpha = 5, ideal = S
sep alpha' beta' expect gamma_alpha = 3
verify thm47 alpha beta
sign alpha "y - x^2" expect sign = 1
"""

sc = parse_scenario(TEXT)
for rep in run_scenario(sc):
    print(rep.status, rep.command)

# lifted points are stored resolved, so the rendered text is self-contained
print(render_scenario(sc))
print("round trip:", parse_scenario(render_scenario(sc)) == sc)
