import sys

from .cli.CommandLine import main as cli_main


def main() -> None:
    """主函数"""
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
