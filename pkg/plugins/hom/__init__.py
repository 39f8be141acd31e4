"""
同态插件 - 交换群同态测试

有限 p-群 G 到 Z_p^m 的映射：精确/抽样 BLR 一致率、穷举最优同态、
最优仿射逼近以及把仿射逼近修正为同态的平移构造。

触发方式:
    - lowdeg hom agree --domain "2^2" --codomain "2^1" --map phi.map [--estimate --trials 10000]
    - lowdeg hom best --domain "2^1 x 2^1 x 2^1" --codomain "2^1" --map phi.map
    - lowdeg hom correct --domain "3^1 x 3^1" --codomain "3^1" --map phi.map [--psi psi.map --h 1]

配置:
    LOWDEG_HOM_ENABLED=True/False     # 功能开关
    LOWDEG_HOM_MAX_ORDER=65536        # 群的最大阶
    LOWDEG_HOM_PAIR_BUDGET=65536      # 精确一致率的 |G|^2 上限
    LOWDEG_HOM_ENUM_BUDGET=1048576    # 同态穷举上限

使用方式:
    >>> from plugins.hom import FiniteAbelianPGroup, GroupMap, blr_agreement
    >>> g = FiniteAbelianPGroup.from_spec("2^2")
    >>> h = FiniteAbelianPGroup.from_spec("2^1")
    >>> blr_agreement(GroupMap.from_function(g, h, lambda x: (x[0] % 2,)))
    1.0
"""

import argparse

from plugins.common import CommandHandler, CommandReceiver, InputError, Result

from .models import FiniteAbelianPGroup, GroupMap, ShiftCorrection
from .testing import (
    best_affine_map,
    best_homomorphism,
    blr_agreement,
    blr_agreement_estimate,
    correct_to_homomorphism,
    enumerate_homomorphisms,
    homomorphism_count,
    is_homomorphism,
    shift_correction,
)

GROUP_FORMAT = """\
group spec (--domain, --codomain): p^k1 x p^k2 x ..., e.g. "2^2 x 2^1";
  the codomain must be a power of Z_p (all exponents 1)
map file (--map, --psi): one codomain tuple per line, components separated by
  spaces or commas, lines in domain enumeration order; element index =
  sum_i x_i * prod_{j<i} p^k_j (first component least significant)"""


class _HomHandler(CommandHandler):
    """hom 命令公共部分：群描述与映射文件"""

    command = "hom"
    feature_name = "hom"
    formats = GROUP_FORMAT
    input_args = ("map",)

    def add_map_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--domain", required=True, metavar="SPEC", help="domain group G")
        parser.add_argument("--codomain", required=True, metavar="SPEC", help="codomain group H")
        parser.add_argument("--map", required=True, metavar="PATH", help="map file for phi")

    def load_map(self, args: argparse.Namespace, path: str) -> GroupMap:
        domain = FiniteAbelianPGroup.from_spec(args.domain)
        codomain = FiniteAbelianPGroup.from_spec(args.codomain)
        return GroupMap.from_file(path, domain, codomain)


class AgreeHandler(_HomHandler):
    """BLR 一致率"""

    name = "BLR 一致率"
    description = "Pr[phi(x) + phi(y) = phi(x+y)]: exact over all pairs, or sampled"
    action = "agree"
    randomized = True

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        self.add_map_arguments(parser)
        parser.add_argument("--estimate", action="store_true", help="sample instead of enumerating")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        phi = self.load_map(args, args.map)
        if args.estimate:
            return self.ok(blr_agreement_estimate(phi, args.trials, args.seed).to_dict())
        return self.ok({
            "order": phi.domain.order,
            "agreement": blr_agreement(phi),
            "homomorphism": is_homomorphism(phi),
        })


class BestHandler(_HomHandler):
    """穷举最优同态"""

    name = "最优同态"
    description = "exhaustive search for the homomorphism agreeing most with phi"
    action = "best"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        self.add_map_arguments(parser)

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        phi = self.load_map(args, args.map)
        psi, agreement = best_homomorphism(phi)
        return self.ok({
            "order": phi.domain.order,
            "homomorphisms": homomorphism_count(phi.domain, phi.codomain),
            "agreement": agreement,
            "generator_images": [list(phi.codomain.element(int(v))) for v in psi.generator_images()],
            "map": psi.to_text(),
        })


class CorrectHandler(_HomHandler):
    """平移修正"""

    name = "平移修正"
    description = "turn an affine approximation psi + h of phi into a homomorphism"
    action = "correct"
    input_args = ("map", "psi")

    ERROR_MESSAGES = {
        "h_without_psi": "--h needs --psi",
    }

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        self.add_map_arguments(parser)
        parser.add_argument("--psi", metavar="PATH",
                            help="homomorphism map file (default: best affine approximation)")
        parser.add_argument("--h", metavar="TUPLE", help="codomain shift, e.g. '1 0' (default: 0)")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        phi = self.load_map(args, args.map)
        if args.psi is None:
            if args.h is not None:
                return self.fail("h_without_psi")
            correction = correct_to_homomorphism(phi)
        else:
            psi = self.load_map(args, args.psi)
            correction = shift_correction(phi, psi, self._parse_shift(args.h, phi))
        payload = {"order": phi.domain.order}
        payload.update(correction.to_dict())
        payload["map"] = correction.psi.to_text()
        return self.ok(payload)

    @staticmethod
    def _parse_shift(text, phi: GroupMap) -> tuple[int, ...]:
        if text is None:
            return (0,) * phi.codomain.rank
        try:
            values = tuple(int(tok) for tok in text.replace(",", " ").split())
        except ValueError:
            raise InputError(f"--h must be integers, got '{text}'") from None
        if len(values) != phi.codomain.rank:
            raise InputError(f"--h needs {phi.codomain.rank} components, got {len(values)}")
        return values


# 创建处理器和接收器
hom_receivers = [
    CommandReceiver(AgreeHandler()),
    CommandReceiver(BestHandler()),
    CommandReceiver(CorrectHandler()),
]


__all__ = [
    "FiniteAbelianPGroup",
    "GroupMap",
    "ShiftCorrection",
    "best_affine_map",
    "best_homomorphism",
    "blr_agreement",
    "blr_agreement_estimate",
    "correct_to_homomorphism",
    "enumerate_homomorphisms",
    "homomorphism_count",
    "is_homomorphism",
    "shift_correction",
    "GROUP_FORMAT",
]
