"""Report templates for text output"""
import textwrap
from typing import Any, Dict, List


def _mark(ok: bool) -> str:
    return "✅" if ok else "❌"


class Messages:
    """All text templates"""

    @staticmethod
    def header(config: Dict[str, Any]) -> str:
        kind = f" {config['kind']}" if config.get('kind') else ""
        inputs = ", ".join(config['inputs']) or "-"
        return textwrap.dedent(f"""
        == {config['command']}{kind} ==
        inputs: {inputs}
        ring: {config['ring']}  top: {config['top']}  arity: {config['arity']}  seed: {config['seed']}
        """).strip()

    @staticmethod
    def footer(status: int, timing: Any = None) -> str:
        line = f"exit status: {status}"
        if timing is not None:
            line += f"  ({timing:.3f} s)"
        return line

    @staticmethod
    def error(message: str) -> str:
        return f"❌ Error: {message}"

    # ---------- per-check sections ----------

    @staticmethod
    def validate(result: Dict[str, Any]) -> str:
        if result['ok']:
            return f"✅ {result['input']}: {result['object']} is valid"
        v = result['violation']
        return textwrap.dedent(f"""
        ❌ {result['input']}: {result['object']} violates {v['identity']}
           level {v['level']}, indices {v['indices']}{' (' + v['detail'] + ')' if v.get('detail') else ''}
        """).strip()

    @staticmethod
    def dold_kan(result: Dict[str, Any]) -> str:
        text = f"{_mark(result['ok'])} {result['name']} up to level {result['top']}: {result['verdict']}"
        if result.get('failure'):
            text += f"\n   first failure: {result['failure']}"
        return text

    @staticmethod
    def theorem1(result: Dict[str, Any]) -> str:
        lines = [
            f"{_mark(result['ok'])} {result['name']}: {result['verdict']}"
            f" (broad variant: {result['broad_verdict']})",
            f"   |lhs| = {result['lhs']['order']}, |rhs| = {result['rhs']['order']},"
            f" hypothesis {'holds' if result['hypothesis'] else 'fails'}",
            f"   certified lifts: {result['certified']}, uncertified: {len(result['uncertified'])}",
        ]
        if result['omitted_lengths']:
            lines.append(f"   omitted tuple lengths: {result['omitted_lengths']}")
        if 'collapse_agrees' in result:
            lines.append(f"   quadratic collapse agrees: {result['collapse_agrees']}")
        return "\n".join(lines)

    @staticmethod
    def theorem2(result: Dict[str, Any]) -> str:
        lines = [
            f"{_mark(result['ok'])} {result['name']}: {result['verdict']}, hypothesis {result['hypothesis']}",
            f"   d(N_n G) = {{{', '.join(result['lhs'])}}}",
            f"   Peiffer product = {{{', '.join(result['rhs'])}}}",
        ]
        for target, factors in result['certificates'].items():
            word = " ".join(f"[{f['u']}, {f['v']}]^{f['exponent']}" for f in factors)
            lines.append(f"   {target} = {word}")
        if result['uncertified']:
            lines.append(f"   uncertified: {', '.join(result['uncertified'])}")
        return "\n".join(lines)

    @staticmethod
    def phi(result: Dict[str, Any]) -> str:
        return textwrap.dedent(f"""
        {_mark(result['ok'])} phi ({result['correction']} correction)
           commutes with faces and degeneracies: {result['commutation'] is None}
           onto every level: {all(result['onto'].values())}
           box identities: {result['box_identities'] is None}
           |G_n| = product of |N_k G|: {all(result['pc2_counts'].values())}
        """).strip()

    @staticmethod
    def otimes(result: Dict[str, Any]) -> str:
        return f"{_mark(result['ok'])} otimes identity on {result['pairs']} pairs, {len(result['failures'])} failures"

    @staticmethod
    def decompose(result: Dict[str, Any]) -> str:
        lines = [f"{_mark(result['ok'])} {result['element']} on level {result['level']}:"]
        for part in result['components']:
            name = "s_" + "".join(str(i) for i in part['I']) if part['I'] else "∅"
            lines.append(f"   {name}: {part['x_I']}")
        lines.append(f"   recomposed: {result['recomposed']}")
        return "\n".join(lines)

    @staticmethod
    def express_degeneracies(result: Dict[str, Any]) -> str:
        J = "{" + ",".join(str(j) for j in result['J']) + "}"
        return textwrap.dedent(f"""
        {_mark(result['ok'])} phi_{J} on level {result['m']} = {result['expression']}
           re-expands exactly: {result['ok']}
        """).strip()

    @staticmethod
    def generated(path: str, kind: str, valid: bool) -> str:
        return f"{_mark(valid)} wrote {kind} to {path}" + ("" if valid else " (does not validate)")

    @staticmethod
    def library(entries: List[Dict[str, Any]]) -> str:
        lines = ["Shipped simplicial groups:"]
        for e in entries:
            orders = " ".join(str(o) for o in e['orders'])
            lines.append(f"  {e['name']:<16} {e['type']:<18} orders {orders}")
        return "\n".join(lines)
