"""Smoke tests for the python bindings.

Run under ctest with PYTHONPATH covering the built extension and the
python/ package directory; fixtures come from CASEKIT_FIXTURES.
"""

import os
import sys

import casekit


def fixture(name):
    return os.path.join(os.environ["CASEKIT_FIXTURES"], name)


def slurp(name):
    with open(fixture(name), "r", encoding="utf-8") as handle:
        return handle.read()


failures = []


def check(label, condition):
    if not condition:
        failures.append(label)
        print("FAIL " + label)


def main():
    case_text = slurp("failure_response.casl")

    diags = casekit.check(case_text)
    check("clean case has no error diagnostics",
          all(d["severity"] != "error" for d in diags))

    check("broken case is flagged",
          any(d["severity"] == "error"
              for d in casekit.check('claim C1 "top"\n'
                                     'argument A1 block=decomposition '
                                     'claim=C1 from=GHOST\n')))

    check("the packaged case is canonical", casekit.canonical(case_text) == case_text)

    report = casekit.status(case_text)
    totals = report["totals"]
    check("status totals match the packaged case",
          totals == {"white": 0, "red": 16, "orange": 8, "yellow": 8,
                     "green": 4, "purple": 0})
    g0 = [row for row in report["rows"] if row["id"] == "G0"]
    check("G0 rolls up red", g0 and g0[0]["colour"] == "red")

    check("the anchor confirmation value", abs(casekit.ko_measure(0.9, 0.1) - 0.8) < 1e-12)
    check("grading splits at the threshold",
          casekit.classify(0.95) == "deductive-grade"
          and casekit.classify(0.5) == "supporting")

    scored = casekit.confirm(slurp("confirmation_demo.casl"), "TOP")
    check("confirmation scores come back", len(scored["scores"]) > 0)

    replayed = casekit.dpn_replay(slurp("delivery.dpnl"), slurp("delivery_run.evl"))
    check("replay produces a trace", len(replayed["trace"]) == 7)
    check("replay ends with a backlog token",
          "ImprovementBacklog" in replayed["marking"])

    reach = casekit.dpn_reach(slurp("delivery.dpnl"),
                              "inject RequestPlaced status=requested\n",
                              bound=2, depth=6)
    check("the delivery net has six reachable markings",
          len(reach["fingerprints"]) == 6 and not reach["truncated"])

    derived = casekit.derive_requirements(slurp("failure_response.catalogue"),
                                          "the demo service")
    check("derivation instantiates every requirement",
          len(derived) == 18
          and all("{service}" not in req["requirement"] for req in derived))

    verified = casekit.resilience_verify(slurp("failure_response.catalogue"),
                                         slurp("analysis_findings.records"),
                                         slurp("service_specs.specs"))
    colours = {row["id"]: row["colour"] for row in verified["rows"]}
    check("verification colours the outcome rows",
          colours["a1"] == "orange" and colours["a7"] == "green"
          and colours["b3"] == "red" and colours["G0"] == "white")
    check("the emitted case parses cleanly",
          all(d["severity"] != "error" for d in casekit.check(verified["case"])))

    if failures:
        print("%d smoke check(s) failed" % len(failures))
        return 1
    print("all smoke checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
