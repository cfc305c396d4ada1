"""Command-line interface.

Exit status 0 on success, 1 when a computed identity fails (a bug), 2 for bad
input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib import resources
from itertools import combinations

from weightedproj.bundle import (
    ChernError,
    chern_product,
    pullback_fan,
    verify_pullback_identity,
)
from weightedproj.cohomology import (
    CohomologyError,
    RingPresentation,
    StructureConstants,
    a_name,
    b_name,
    check_presentation,
    presentation,
    structure_constants,
)
from weightedproj.fan import Fan, FanError, fan_from_rays, fan_from_weights
from weightedproj.piecewise import (
    PiecewiseError,
    PiecewisePolynomial,
    a_subset,
    b_form,
    courant,
    divisor_coefficient,
)
from weightedproj.polynomial import Polynomial, PolynomialError
from weightedproj.weights import (
    AnonymizedRing,
    RecoveryError,
    anonymize,
    check_weights,
    random_unimodular,
    recover_weights,
)


class ContractViolation(Exception):
    """A mathematical identity failed to hold."""


def parse_csv(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def parse_chi(text: str) -> tuple[int, ...]:
    try:
        return check_weights(parse_csv(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


# -- subcommand builders: each returns (json_data, text_lines) --------------


def build_fan(chi, seed=None):
    fan = fan_from_weights(chi)
    if seed is None:
        data = fan.to_json()
        lines = [f"chi = {list(fan.chi)}  normalised = {list(fan.chi_normalized)}"]
    else:
        rng = random.Random(seed)
        u = random_unimodular(fan.dim, rng)
        perm = list(range(fan.size))
        rng.shuffle(perm)
        data = anonymize(fan, u, perm).to_json()
        lines = [f"anonymised fan (seed {seed})"]
    lines += [f"v{i} = {list(v)}" for i, v in enumerate(data["rays"])]
    return data, lines


def reparse_fan(data):
    if "chi" in data:
        return Fan.from_json(data).to_json()
    return AnonymizedRing.from_json(data).to_json()


def build_generators(chi, subset=None):
    fan = fan_from_weights(chi)
    if subset is not None:
        if not subset or any(not 0 <= i < fan.size for i in subset):
            raise ValueError(f"--subset indices must lie in 0..{fan.size - 1}")
        f = a_subset(fan, subset)
        data = {"fan": fan.to_json(), "a_subsets": {a_name(sorted(set(subset))): _pp_json(f)}}
        return data, [f"{a_name(sorted(set(subset)))} = {f.format()}"]
    courants = {a_name((i,)): _pp_json(courant(fan, i)) for i in range(fan.size)}
    forms = {
        b_name(i, j): list(b_form(fan, i, j))
        for i in range(fan.size)
        for j in range(fan.size)
        if i != j
    }
    higher = {
        a_name(s): _pp_json(a_subset(fan, s))
        for k in range(2, fan.size)
        for s in combinations(range(fan.size), k)
    }
    data = {"fan": fan.to_json(), "courant": courants, "b_forms": forms, "a_subsets": higher}
    lines = [f"{name} = {courant(fan, i).format()}" for i, name in enumerate(courants)]
    lines += [f"{name} = {Polynomial.linear(tuple(b)).format()}" for name, b in forms.items()]
    for k in range(2, fan.size):
        for s in combinations(range(fan.size), k):
            lines.append(f"{a_name(s)} = product / {divisor_coefficient(fan.chi_normalized, s)}")
    return data, lines


def _pp_json(f: PiecewisePolynomial):
    return [c.to_json() for c in f.components]


def reparse_generators(data):
    fan = Fan.from_json(data["fan"])
    out = {"fan": fan.to_json()}
    for key in ("courant", "b_forms", "a_subsets"):
        if key not in data:
            continue
        if key == "b_forms":
            out[key] = {n: [int(x) for x in b] for n, b in data[key].items()}
        else:
            out[key] = {
                n: _pp_json(PiecewisePolynomial(fan, tuple(Polynomial.from_json(c) for c in comps)))
                for n, comps in data[key].items()
            }
    return out


def build_presentation(chi):
    fan = fan_from_weights(chi)
    pres = presentation(fan)
    failures = check_presentation(fan, pres)
    if failures:
        raise ContractViolation("relations fail: " + "; ".join(failures))
    consts = structure_constants(chi)
    data = {
        "chi": list(fan.chi),
        "structure_constants": consts.to_json()["structure_constants"],
        "presentation": pres.to_json(),
    }
    lines = [f"generators: " + ", ".join(f"{n} (deg {2 * d})" for n, d in pres.generators)]
    lines += ["relations:"] + [f"  {r.format()}" for r in pres.relations]
    return data, lines


def reparse_presentation(data):
    pres = RingPresentation.from_json(data["presentation"])
    return {
        "chi": [int(c) for c in data["chi"]],
        "structure_constants": {str(int(m)): str(int(k)) for m, k in data["structure_constants"].items()},
        "presentation": pres.to_json(),
    }


def build_constants(chi, m=None):
    consts = structure_constants(chi)
    if m is not None:
        if not 1 <= m < len(chi):
            raise ValueError(f"--m must lie in 1..{len(chi) - 1}")
        consts = StructureConstants(
            consts.chi,
            {m: consts.coeffs[m]},
            {name: {m: v[m]} for name, v in consts.by_formula.items()},
        )
    if not consts.agreement:
        raise ContractViolation(f"structure constant formulas disagree: {consts.by_formula}")
    lines = [f"c1^{m} = {k} * c{m}" for m, k in sorted(consts.coeffs.items())]
    lines.append(f"agreement: {str(consts.agreement).lower()}")
    return consts.to_json(), lines


def reparse_constants(data):
    return StructureConstants.from_json(data).to_json()


def build_recover(text):
    try:
        ring = AnonymizedRing.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError(f"could not parse fan JSON: {exc}") from exc
    weights = recover_weights(ring)
    return {"weights": list(weights)}, ["weights: " + ",".join(map(str, weights))]


def reparse_recover(data):
    return {"weights": sorted(int(w) for w in data["weights"])}


def build_chern(chi):
    fan = fan_from_weights(chi)
    pfan = pullback_fan(fan)
    big = pfan.lcm
    factors = [
        {"index": i, "coefficient": str(big // pfan.u[i]), "text": f"xi + {big // pfan.u[i]}*x{i}"}
        for i in range(pfan.size)
    ]
    product = chern_product(pfan)
    identities = [verify_pullback_identity(pfan, i) for i in range(pfan.size)]
    if not all(identities):
        raise ContractViolation("pull-back identity fails for some Courant function")
    data = {
        "chi": list(fan.chi),
        "chi_normalized": list(fan.chi_normalized),
        "lcm": str(big),
        "factors": factors,
        "product_is_zero": product.is_zero(),
        "pullback_identity": identities,
        "verdict": product.is_zero() and all(identities),
    }
    lines = ["prod_i (" + ") (".join(f["text"] for f in factors) + ") = 0"]
    lines.append(f"verdict: {str(data['verdict']).lower()}")
    return data, lines


def reparse_chern(data):
    out = dict(data)
    out["chi"] = [int(c) for c in data["chi"]]
    out["factors"] = [
        {"index": int(f["index"]), "coefficient": str(int(f["coefficient"])), "text": f["text"]}
        for f in data["factors"]
    ]
    return out


def load_example_fixture() -> dict:
    ref = resources.files("weightedproj").joinpath("data/example_1234.json")
    return json.loads(ref.read_text())


def build_example():
    """Replay the (1,2,3,4) worked example and diff against the fixture."""
    fx = load_example_fixture()
    fan = fan_from_rays(fx["rays"], fx["chi"])
    names = fx["variables"]
    diffs = []
    lines = []
    for i, comps in enumerate(fx["courant"]):
        got = courant(fan, i)
        want = tuple(Polynomial.linear(tuple(c)) for c in comps)
        lines.append(f"a{i} = {got.format(names)}")
        if got.components != want:
            diffs.append(f"a{i}: got {got.format(names)}")
    for key, d in fx["divisors"].items():
        s = tuple(int(x) for x in key.split(","))
        got_d = divisor_coefficient(fan.chi_normalized, s)
        a_subset(fan, s)  # raises unless the product is divisible by got_d
        lines.append(f"{a_name(s)} = {'*'.join(f'a{i}' for i in s)} / {got_d}")
        if got_d != d:
            diffs.append(f"d{s}: got {got_d}, fixture {d}")
    for key, coeffs in fx["differences"].items():
        i, j = (int(x) for x in key.split(","))
        got = courant(fan, i) - courant(fan, j)
        if not got.is_global() or got.components[0] != Polynomial.linear(tuple(coeffs)):
            diffs.append(f"a{i} - a{j}: got {got.format(names)}")
        else:
            lines.append(f"a{i} - a{j} = {got.components[0].format(names)}")
    for key, coeffs in fx["b_forms"].items():
        i, j = (int(x) for x in key.split(","))
        if list(b_form(fan, i, j)) != coeffs:
            diffs.append(f"b{i}{j}: got {b_form(fan, i, j)}")
    for m, k in fx["structure_constants"].items():
        got_k = structure_constants(fan.chi).coeffs[int(m)]
        if got_k != k:
            diffs.append(f"k_{m}: got {got_k}, fixture {k}")
    data = {"chi": fx["chi"], "diffs": diffs, "ok": not diffs}
    lines.append(f"diffs: {len(diffs)}")
    lines += diffs
    return data, lines


def reparse_example(data):
    return {"chi": [int(c) for c in data["chi"]], "diffs": list(data["diffs"]), "ok": bool(data["ok"])}


REPARSERS = {
    "fan": reparse_fan,
    "generators": reparse_generators,
    "presentation": reparse_presentation,
    "constants": reparse_constants,
    "recover": reparse_recover,
    "chern": reparse_chern,
    "example": reparse_example,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weightedproj",
        description="Equivariant cohomology of weighted projective spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, chi=True):
        p = sub.add_parser(name, help=help)
        if chi:
            p.add_argument("--chi", type=parse_chi, required=True, help="comma-separated positive weights")
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    add("fan", "fan rays for chi; with --seed, an anonymised copy").add_argument("--seed", type=int)
    add("generators", "Courant functions, b-forms and a_I").add_argument("--subset", type=parse_csv)
    add("presentation", "generators and relations")
    add("constants", "ordinary cohomology structure constants").add_argument("--m", type=int)
    add("recover", "recover weights from a fan JSON on stdin", chi=False)
    add("chern", "weighted projective bundle Chern relation")
    add("example", "replay the (1,2,3,4) example against golden fixtures", chi=False)
    return parser


def run(args, stdin=None) -> tuple[int, str]:
    """Execute a parsed request; return ``(exit_status, output)``."""
    try:
        if args.command == "fan":
            data, lines = build_fan(args.chi, args.seed)
        elif args.command == "generators":
            data, lines = build_generators(args.chi, args.subset)
        elif args.command == "presentation":
            data, lines = build_presentation(args.chi)
        elif args.command == "constants":
            data, lines = build_constants(args.chi, args.m)
        elif args.command == "recover":
            data, lines = build_recover((stdin or sys.stdin).read())
        elif args.command == "chern":
            data, lines = build_chern(args.chi)
        else:
            data, lines = build_example()
    except (ContractViolation, ChernError, CohomologyError, PiecewiseError) as exc:
        return 1, f"error: {exc}\n"
    except (ValueError, FanError, RecoveryError, PolynomialError) as exc:
        return 2, f"error: {exc}\n"
    if args.command == "example" and not data["ok"]:
        status = 1
    else:
        status = 0
    text = dumps(data) if args.format == "json" else "\n".join(lines) + "\n"
    return status, text


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    status, text = run(args)
    stream = sys.stderr if text.startswith("error:") else sys.stdout
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
