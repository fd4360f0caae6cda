"""
Copyright © 2026 The golayft developers.
"""
import argparse
import json
import sys

from golayft import default_ops, version
from golayft.run_golay import COMMANDS


def add_args(parser: argparse.ArgumentParser):
    """ the stage, --ops and --version, and one --key flag per default ops key """
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="stage to run")
    parser.add_argument("--ops", default="", type=str, help="ops file (json)")
    parser.add_argument("--version", action="store_true", help="print version number.")
    ops0 = default_ops()
    for k in ops0.keys():
        if isinstance(ops0[k], dict) or k == "golayft_version":
            continue
        v = dict(default=ops0[k], help="{0} : {1}".format(k, ops0[k]))
        if isinstance(ops0[k], list) and len(ops0[k]):
            v["nargs"] = "+"
            v["type"] = type(ops0[k][0])
        parser.add_argument("--" + k, **v)
    return parser


def parse_args(parser: argparse.ArgumentParser):
    """ (args, ops): defaults overridden by the ops file, then by flags that differ from the defaults """
    args = parser.parse_args()
    dargs = vars(args)
    ops0 = default_ops()
    ops = {}
    if args.ops:
        with open(args.ops, "r") as f:
            ops = json.load(f)
    set_param_msg = "->> Setting {0} to {1}"
    for k in ops0:
        if k not in dargs:
            continue
        default_key = ops0[k]
        args_key = dargs[k]
        if isinstance(default_key, list):
            if list(args_key) != default_key:
                ops[k] = [type(default_key[0])(x) for x in args_key]
                print(set_param_msg.format(k, ops[k]))
        elif isinstance(default_key, bool):
            args_key = bool(int(args_key))
            if default_key != args_key:
                ops[k] = args_key
                print(set_param_msg.format(k, ops[k]))
        elif not (default_key == type(default_key)(args_key)):
            ops[k] = type(default_key)(args_key)
            print(set_param_msg.format(k, ops[k]))
    return args, {**ops0, **ops}


def main():
    args, ops = parse_args(
        add_args(argparse.ArgumentParser(description="golayft parameters")))
    if args.version:
        print("golayft v{}".format(version))
        return
    if args.command is None:
        print("usage: golayft {%s} [--key value ...]" % ",".join(COMMANDS))
        sys.exit(2)
    from golayft.run_golay import run_golay
    try:
        result = run_golay(ops, args.command)
    except ValueError as e:
        print("ERROR: %s" % e)
        sys.exit(2)
    if args.command == "ft" and not result.passed:
        sys.exit(1)


if __name__ == "__main__":
    main()
