# src/homfin/utils/__init__.py
