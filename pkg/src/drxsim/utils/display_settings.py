from .human_readable_bits import human_readable_bits


def display_settings(cfg, mode_name, out_dir=None, extra=None):
    """Prints the common settings block for different modes."""
    print("-" * 30)
    print(f"Mode: {mode_name}")
    if out_dir is not None:
        print(f"Output directory: '{out_dir}'")
    print(f"Seed: {cfg.seed}")
    print(f"Episode length: {cfg.episode_ttis} TTIs of {cfg.tti_ms} ms")
    print(
        f"DRX: long cycle {cfg.drx_long_cycle_ms} ms, onDuration {cfg.drx_on_duration_ms} ms, "
        f"inactivity timer {cfg.drx_inactivity_timer_ms} ms"
    )
    print(f"Channel: SNR {cfg.snr_db} dB, rho {cfg.effective_rho:.4f}, link errors '{cfg.link_error_model}'")
    print(f"Action space: {cfg.action_space}")
    print(f"Saturation threshold: {human_readable_bits(cfg.q_sat_bits)}")
    print(f"Delay budget: {cfg.delta_ms} ms (target satisfaction {cfg.beta})")

    if "Train" in mode_name or "Tune" in mode_name:
        cell = f"{cfg.num_ues} UE(s)" if cfg.num_ues else "random per episode"
        print(f"Cell size: {cell}")
        print(f"Episodes per run: {cfg.episodes}")
        print(f"Optimizer: {cfg.optimizer} (learning rate {cfg.learning_rate})")
    elif "Eval" in mode_name:
        print(f"Evaluation episodes: {cfg.eval_episodes} (epsilon {cfg.eval_epsilon})")

    for label, value in (extra or {}).items():
        print(f"{label}: {value}")
    print("-" * 30)
