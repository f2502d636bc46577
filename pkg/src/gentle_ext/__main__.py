from gentle_ext.cli import main

main()
