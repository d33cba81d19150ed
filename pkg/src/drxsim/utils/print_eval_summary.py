def _fmt(value, spec):
    return "n/a" if value is None else format(value, spec)


def print_eval_summary(results):
    """Prints one line per evaluated (policy, cell size) with the cell-averaged KPIs."""
    print("-" * 30)
    if not results:
        print("No evaluation results.")
        print("-" * 30)
        return

    header = f"{'policy':<10} {'|A|':>3} {'UEs':>3} {'activity':>8} {'delay':>7} {'p95':>7} {'satisf.':>7}"
    print(header)
    for result in results:
        print(
            f"{result.policy.value:<10} {result.action_space:>3} {result.num_ues:>3} "
            f"{result.mean_activity:>8.3f} {_fmt(result.mean_delay_ms, '7.2f'):>7} "
            f"{_fmt(result.mean_p95_delay_ms, '7.1f'):>7} {result.mean_satisfaction:>7.3f}"
        )
    print("-" * 30)
