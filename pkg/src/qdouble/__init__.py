"""Modular data of Drinfeld doubles of finite groups."""
