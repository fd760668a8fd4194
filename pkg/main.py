import sys

from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

from cli.commands import run
from utils.logger import setup_logging

if __name__ == "__main__":
    setup_logging()
    sys.exit(run(sys.argv[1:]))
