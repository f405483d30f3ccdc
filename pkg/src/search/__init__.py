"""The three-stage exact search for large Q-Fano indices and its slope bounds"""
