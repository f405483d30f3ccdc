"""Machine checks for the arithmetic lemmas"""
