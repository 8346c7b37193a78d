# fockcrystal/services/providers.py
"""
Service provider module for dependency injection.
"""
from fockcrystal.services.bijections import psi, psi_recursive, plan
from fockcrystal.services.canonical_basis import pair_orbit
from fockcrystal.services.crystal import build_crystal, enumerate_uglov
from fockcrystal.services.hecke_params import basic_set_charge
from fockcrystal.services.symbols import to_symbol


def get_enumeration_service():
    return enumerate_uglov

def get_psi_service():
    return psi

def get_oracle_service():
    return psi_recursive

def get_plan_service():
    return plan

def get_symbol_service():
    return to_symbol

def get_canonical_service():
    return pair_orbit

def get_basic_set_service():
    return basic_set_charge

def get_graph_service():
    return build_crystal
