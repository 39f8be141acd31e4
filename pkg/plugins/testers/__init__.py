"""
测试插件 - 线性、二次性与导数测试

BLR、图/超图线性测试、超图二次性测试与 AKKLR 导数测试的
Monte-Carlo 执行器，以及对应的精确接受概率与可靠性上界。

触发方式:
    - lowdeg test blr --fn f.tt [--affine]
    - lowdeg test graph --fn f.tt --hg g.hg
    - lowdeg test hypergraph-lin --fn f.tt --hg h.hg --trials 100000 --seed 1 --with-bound
    - lowdeg test hypergraph-quad --fn f.tt --hg h3.hg
    - lowdeg test akklr --fn f.tt --k 3

配置:
    LOWDEG_TESTERS_ENABLED=True/False   # 功能开关
    LOWDEG_BOUND_MAX_N=12               # --with-bound / --exact 允许的最大 n

使用方式:
    >>> from plugins.testers import complete_hypergraph, hypergraph_linearity_test
    >>> report = hypergraph_linearity_test(f, complete_hypergraph(4, 2), 100_000, seed=1)
"""

import argparse

from plugins.common import CommandHandler, CommandReceiver, Result, config
from plugins.core import FUNCTION_FORMAT, BooleanFunction, add_function_arguments, load_function

from .exact import (
    exact_acceptance_akklr,
    exact_acceptance_blr,
    exact_acceptance_hypergraph,
    exact_acceptance_quadraticity,
    soundness_bound,
)
from .models import Hypergraph, TestReport, complete_hypergraph
from .runners import (
    akklr_test,
    blr_test,
    blr_trial,
    graph_test,
    hypergraph_linearity_test,
    hypergraph_quadraticity_test,
    linearity_check_bit,
    quadraticity_queries,
)

HYPERGRAPH_FORMAT = """\
hypergraph file (--hg):
  line 1: t=<vertices>
  following lines: one edge each, space-separated 1-based vertex indices
  alternatively --complete T R builds the complete R-uniform hypergraph on T vertices"""


class _TestHandler(CommandHandler):
    """test 命令公共部分：--with-bound / --exact 以及报告组装"""

    command = "test"
    feature_name = "testers"
    formats = FUNCTION_FORMAT
    randomized = True
    input_args = ("fn",)

    ERROR_MESSAGES = {
        "too_large": "n={n} exceeds bound_max_n={limit} for --with-bound/--exact",
    }

    def add_report_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--with-bound", action="store_true",
                            help="fill theoretical_bound with the exact soundness bound")
        parser.add_argument("--exact", action="store_true",
                            help="also report the exact acceptance probability")

    def bound(self, f: BooleanFunction, args: argparse.Namespace) -> float:
        raise NotImplementedError

    def exact(self, f: BooleanFunction, args: argparse.Namespace) -> float:
        raise NotImplementedError

    def run_test(self, f: BooleanFunction, args: argparse.Namespace) -> TestReport:
        raise NotImplementedError

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        f = load_function(args)
        if (args.with_bound or args.exact) and f.n > config.bound_max_n:
            return self.fail("too_large", n=f.n, limit=config.bound_max_n)
        report = self.run_test(f, args)
        if args.with_bound:
            report = report.with_bound(self.bound(f, args))
        payload = report.to_dict()
        if args.exact:
            payload["exact_acceptance"] = self.exact(f, args)
        return self.ok(payload)


class _HypergraphTestHandler(_TestHandler):
    """需要超图输入的测试"""

    formats = FUNCTION_FORMAT + "\n\n" + HYPERGRAPH_FORMAT
    input_args = ("fn", "hg")

    def add_hypergraph_arguments(self, parser: argparse.ArgumentParser) -> None:
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--hg", metavar="PATH", help="hypergraph file")
        group.add_argument("--complete", type=int, nargs=2, metavar=("T", "R"),
                           help="complete R-uniform hypergraph on T vertices")

    def load_hypergraph(self, args: argparse.Namespace) -> Hypergraph:
        if args.hg:
            return Hypergraph.from_file(args.hg)
        t, r = args.complete
        return complete_hypergraph(t, r)

    def bound(self, f, args):
        return soundness_bound(f, self.load_hypergraph(args))


class BlrHandler(_TestHandler):
    """BLR 线性测试"""

    name = "BLR 测试"
    description = "BLR linearity test f(x)f(y)f(x+y) = 1 (or f(0) with --affine)"
    action = "blr"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        parser.add_argument("--affine", action="store_true", help="compare with f(0) instead of 1")
        self.add_report_arguments(parser)

    def run_test(self, f, args):
        return blr_test(f, args.trials, args.seed, affine=args.affine)

    def bound(self, f, args):
        return soundness_bound(f, Hypergraph(2, ((1, 2),)))

    def exact(self, f, args):
        return exact_acceptance_blr(f, affine=args.affine)


class GraphHandler(_HypergraphTestHandler):
    """图线性测试"""

    name = "图测试"
    description = "graph linearity test: one BLR check per edge on shared random points"
    action = "graph"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        self.add_hypergraph_arguments(parser)
        parser.add_argument("--strict", action="store_true", help="compare with 1 instead of f(0)")
        self.add_report_arguments(parser)

    def run_test(self, f, args):
        return graph_test(f, self.load_hypergraph(args), args.trials, args.seed,
                          affine=not args.strict)

    def exact(self, f, args):
        return exact_acceptance_hypergraph(f, self.load_hypergraph(args), affine=not args.strict)


class HypergraphLinearityHandler(GraphHandler):
    """超图线性测试"""

    name = "超图线性测试"
    description = "hypergraph linearity test: prod_{i in e} f(x_i) * f(sum x_i) = f(0)^(|e|+1)"
    action = "hypergraph-lin"

    def run_test(self, f, args):
        return hypergraph_linearity_test(f, self.load_hypergraph(args), args.trials, args.seed,
                                         affine=not args.strict)


class HypergraphQuadraticityHandler(_HypergraphTestHandler):
    """超图二次性测试"""

    name = "超图二次性测试"
    description = "hypergraph quadraticity test on a 3-uniform hypergraph"
    action = "hypergraph-quad"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        self.add_hypergraph_arguments(parser)
        self.add_report_arguments(parser)

    def run_test(self, f, args):
        return hypergraph_quadraticity_test(f, self.load_hypergraph(args), args.trials, args.seed)

    def exact(self, f, args):
        return exact_acceptance_quadraticity(f, self.load_hypergraph(args))


class AkklrHandler(_TestHandler):
    """k 阶导数测试"""

    name = "AKKLR 测试"
    description = "derivative test: product of f over a random k-dimensional affine cube is +1"
    action = "akklr"
    default_trials = 100_000

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        parser.add_argument("--k", type=int, default=3, help="derivative order k >= 1 (default: 3)")
        self.add_report_arguments(parser)

    def run_test(self, f, args):
        return akklr_test(f, args.k, args.trials, args.seed)

    def bound(self, f, args):
        return exact_acceptance_akklr(f, args.k)

    def exact(self, f, args):
        return exact_acceptance_akklr(f, args.k)


# 创建处理器和接收器
test_receivers = [
    CommandReceiver(BlrHandler()),
    CommandReceiver(GraphHandler()),
    CommandReceiver(HypergraphLinearityHandler()),
    CommandReceiver(HypergraphQuadraticityHandler()),
    CommandReceiver(AkklrHandler()),
]


__all__ = [
    # 模型
    "Hypergraph",
    "TestReport",
    "complete_hypergraph",
    # 执行器
    "akklr_test",
    "blr_test",
    "blr_trial",
    "graph_test",
    "hypergraph_linearity_test",
    "hypergraph_quadraticity_test",
    "linearity_check_bit",
    "quadraticity_queries",
    # 精确值
    "exact_acceptance_akklr",
    "exact_acceptance_blr",
    "exact_acceptance_hypergraph",
    "exact_acceptance_quadraticity",
    "soundness_bound",
    "HYPERGRAPH_FORMAT",
]
