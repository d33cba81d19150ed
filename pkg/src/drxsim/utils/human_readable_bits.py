def human_readable_bits(num_bits):
    """Convert a number of bits to a human-readable string (decimal prefixes)."""
    if num_bits == 0:
        return "0 bit"
    units = ("bit", "kbit", "Mbit", "Gbit", "Tbit")
    i = 0
    try:
        value = float(num_bits)
    except (TypeError, ValueError):
        return "Invalid size"

    while abs(value) >= 1000 and i < len(units) - 1:
        value /= 1000
        i += 1
    return f"{value:.2f} {units[i]}"
