"""
大规模验证脚本
用不同进程数运行验证套件，检查报告逐字节一致并给出耗时
"""

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))


def run_verify(suites: str, threads: int) -> str:
    """运行一次 verify，返回报告文本"""
    from jacsum.runner.cli import JobSpec, run

    print(f"\nRunning verify:")
    print(f"  Suites: {suites}")
    print(f"  Threads: {threads}")

    start_time = time.time()
    code, text = run(JobSpec("verify", {"suite": suites}, threads=threads))
    elapsed = time.time() - start_time

    report = json.loads(text)
    print(f"\nResults:")
    print(f"  Exit code: {code}")
    print(f"  Total time: {elapsed:.2f}s")
    for suite in report["result"]["suites"]:
        status = "PASS" if suite["pass"] else "FAIL"
        print(f"  {suite['suite']}: {status} ({suite['failed']}/{suite['cases']} failed)")
    print(f"  Digest: {hashlib.sha256(text.encode('utf-8')).hexdigest()}")
    return text


def compare_reports(reports) -> bool:
    """报告必须逐字节一致"""
    print("\nComparing reports...")
    first = reports[0]
    for threads, text in reports[1:]:
        if text != first[1]:
            print(f"  ✗ Report with {threads} threads differs from {first[0]} threads")
            return False
    print(f"  ✓ {len(reports)} reports are identical")
    return True


def main():
    parser = argparse.ArgumentParser(description="Large-scale verification test")
    parser.add_argument("--suites", default="all", help="Comma-separated suite names or 'all'")
    parser.add_argument(
        "--threads", default="1,4", help="Comma-separated worker counts to compare"
    )
    args = parser.parse_args()

    thread_counts = [int(item) for item in args.threads.split(",") if item.strip()]
    reports = [(threads, run_verify(args.suites, threads)) for threads in thread_counts]

    identical = compare_reports(reports)
    passed = json.loads(reports[0][1])["pass"]

    print("\n" + "=" * 60)
    print("Test completed!" if identical and passed else "Test FAILED")
    sys.exit(0 if identical and passed else 1)


if __name__ == "__main__":
    main()
