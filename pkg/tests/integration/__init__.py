# End-to-end experiment reproductions
