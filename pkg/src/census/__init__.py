"""Isomorphism-class enumeration, polynomial censuses, witness search and claim checks"""
from .enumerator import enumerate_nonisomorphic, plan_enumeration
from .processor import CensusReport, census, write_report
from .witness import Stratum, WitnessResult, witness_search
from .family_claims import Verdict, verify_family_claims
from .crosschecks import uniform_vs_general_check, verify_superset_mates
from .selfcheck import run_selfcheck
