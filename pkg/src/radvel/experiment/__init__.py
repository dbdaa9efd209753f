"""Velocity-sweep experiments comparing the phase method with the Doppler baseline."""
