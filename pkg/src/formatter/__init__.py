"""Writers for record tables and verification reports"""
