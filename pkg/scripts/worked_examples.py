"""Print the linear, cubic and cosine worked examples with a Fock-space replay of each."""
from ncqsde import FockConfig, LinearModel, SynthesisProblem, check_realizable, complete_drift
from ncqsde.fock import verify_realization
from ncqsde.ncpoly import I, NcPoly, q
from ncqsde.parser import parse_poly
from ncqsde.realize import QsdeModel

G = (NcPoly.const(-1), NcPoly.const(-I))  # coupling column that yields L = q + i*p, gamma = 2


def show(title, model, realization):
    cfg = FockConfig(dim=40, modes=model.modes)
    print(f"== {title}")
    for k, fk in enumerate(model.f, 1):
        print(f"  f{k} = {fk}")
    print(f"  H  = {realization.H}")
    for k, Lk in enumerate(realization.L, 1):
        print(f"  L{k} = {Lk}")
    print(f"  Fock replay at N={cfg.dim}: max residual {verify_realization(model, realization, cfg):.2e}")


def linear():
    lm = LinearModel(((-2, 1), (-1, 0)), 1, I)
    model = lm.model()
    show("linear oscillator, A = [[-2, 1], [-1, 0]]", model, check_realizable(model).realization)
    flipped = check_realizable(LinearModel(((0, 1), (-1, 0)), 1, I).model())
    print(f"  with A = [[0, 1], [-1, 0]] instead: {flipped.verdict}")


def synthesized(title, f1):
    f2, r = complete_drift(SynthesisProblem(G, f1=f1))
    show(title, QsdeModel(1, 1, (f1, f2), tuple((x,) for x in G)), r)


if __name__ == "__main__":
    linear()
    synthesized("cubic drift, f1 = q^3", q() ** 3)
    for cap in (8, 12):
        synthesized(f"cosine drift, f1 = cos(q) truncated at degree {cap}", parse_poly("cos(q)", 1, cap))
