"""Readers for basket text and emitted record tables"""
