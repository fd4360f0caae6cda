"""
Copyright © 2026 The golayft developers.
"""
from .version import version


def default_ops():
    """ every tunable of the golayft stages, grouped by stage """
    return {
        # golayft version
        "golayft_version": version,  # current version of golayft used for the run

        # code selection
        "code": "golay",  # golay, steane or the path of a code matrix file

        # preparation settings
        "prep_method": "overlap4",  # overlap4, steane4, steane12 or pair (two copies of prep_circuit)
        "prep_circuit": "",  # circuit file used by the pair method
        "overlap_circuit": "",  # circuit file replacing the synthesized overlap preparation
        "overlap_convention":
            "auto",  # reading of the published permutations: image, preimage or auto (first that passes)
        "search_strategy":
            "latin-round-permute",  # latin-round-permute, latin-random-presentation or overlap-m23-permute
        "search_trials": 0,  # candidate pairs drawn by the randomized search, 0 skips the search
        "search_results": 1,  # fault-tolerant quadruples kept by the search

        # fault-tolerance check
        "max_order": 0,  # largest fault order checked, 0 uses the code's t
        "max_witnesses": 20,  # witness fault sets kept in an FtReport
        "prep_orders": 2,  # orders of the preparation-only weight property

        # noise
        "p_values": [1e-4, 5e-4, 1e-3, 1.5e-3, 2e-3],  # CNOT failure rates p = 15 gamma of the simulations
        "rest_scale": 1,  # 0 switches rest noise off

        # Monte Carlo settings
        "trials": 1000000,  # trials per data point
        "batches": 10,  # independent streams per data point (standard errors from batch means)
        "seed": 0,  # seed of every random stream
        "workers": 1,  # worker processes, results do not depend on it
        "malignant_check":
            False,  # compare counted CNOT event bounds with simulated frequencies after counting
        "malignant_trials": 100000,  # trials of the malignant simulation per variant

        # counting settings
        "k_good_profile": "desk",  # desk (hours) or full (the long documented run)
        "k_good": {},  # overrides of single KGoodConfig fields, e.g. {"exrec": 12} (ops file only)
        "corrections": True,  # apply the XZ corrections to the verification counts
        "require_ft": True,  # refuse to count a network that fails the strict fault-tolerance check
        "require_ft_order": 2,  # order of that check, capped at the code's t; 0 uses t

        # certification grid
        "gamma_max": "1/7500",  # upper end of the bounded range (p = 2e-3)
        "gamma_min_ratio": 10,  # gamma_min = gamma_max / gamma_min_ratio
        "grid_points": 1000,  # grid steps between gamma_min and gamma_max
        "certify": True,  # certify monotonicity of every emitted bound
        "curve_points": 50,  # points of the level-one event curves written as CSV

        # threshold settings
        "gamma_ratio": 2,  # Gamma = P_j / gamma_ratio + eps
        "rel_width": "1/10000",  # relative width of the bisection brackets
        "check_points": 100,  # replay points of the level-two conditions below the threshold
        "levels": 3,  # levels of the concatenation fixed-point iteration

        # output settings
        "save_path0": "",  # directory for results, defaults to ./golayft_out
        "checkpoint_dir": "",  # directory of resumable counting pieces (GOLAYFT_CHECKPOINT_DIR overrides)
        "progress": True,  # tqdm progress bars
    }
