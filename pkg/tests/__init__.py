# Test package for qcoh
